from crumble.harness.bench import bench, bench_term, loglog_slope, overhead_constant, write_csv
from crumble.harness.checking import CheckFailure, build_report, check_many, cross_check, verify_projection
from crumble.harness.families import FAMILIES, kennedy_family
from crumble.harness.generator import ConstructorWeights, GenConfig, gen_term
