from typing import Dict, List, Optional

from pydantic import BaseModel

from crumble.constants import Mode
from crumble.machine.metrics import Metrics, TraceEntry, TransitionLabel


class MetricsReport(BaseModel):
    beta: int = 0
    ift: int = 0
    iff: int = 0
    ife: int = 0
    app_err: int = 0
    sub_var: int = 0
    sub_l: int = 0
    sub_if: int = 0
    sea: int = 0
    principal: int = 0
    term_size: int = 0
    crumble_size: int = 0
    exhausted: bool = False

    @classmethod
    def from_metrics(cls, metrics: Metrics, exhausted: bool) -> "MetricsReport":
        return cls(
            **{label.value: metrics.count(label) for label in TransitionLabel},
            principal=metrics.principal_count,
            term_size=metrics.initial_term_size,
            crumble_size=metrics.initial_crumble_size,
            exhausted=exhausted,
        )


class TraceEntryReport(BaseModel):
    step: int
    label: str
    snapshot: Optional[str] = None

    @classmethod
    def from_entry(cls, entry: TraceEntry) -> "TraceEntryReport":
        return cls(step=entry.step, label=entry.label.value, snapshot=entry.snapshot)


class CheckReport(BaseModel):
    """Outcome of running one term on the oracle and on the machine.

    Optional flags are ``None`` when the clause does not apply, e.g. harmony at halt for a run
    that never halted.
    """

    term: str
    mode: Mode
    reference_steps: int
    principal_count: int
    reference_exhausted: bool
    machine_exhausted: bool
    final_alpha_equal: Optional[bool] = None
    rule_sequence_matches: Optional[bool] = None
    sub_l_if_bound: bool = True
    sub_var_bound: bool = True
    substitution_bound: bool = True
    sea_bound: Optional[bool] = None
    final_harmony: Optional[bool] = None
    size_bound: bool = True
    var_measure_bound: bool = True
    metrics: MetricsReport

    @property
    def both_exhausted(self) -> bool:
        return self.reference_exhausted and self.machine_exhausted

    def clauses(self) -> Dict[str, Optional[bool]]:
        return {
            "termination": self.reference_exhausted == self.machine_exhausted,
            "principal_count": self.reference_steps == self.principal_count,
            "final_alpha_equal": self.final_alpha_equal,
            "rule_sequence": self.rule_sequence_matches,
            "sub_l_if_bound": self.sub_l_if_bound,
            "sub_var_bound": self.sub_var_bound,
            "substitution_bound": self.substitution_bound,
            "sea_bound": self.sea_bound,
            "final_harmony": self.final_harmony,
            "size_bound": self.size_bound,
            "var_measure_bound": self.var_measure_bound,
        }

    def violations(self) -> List[str]:
        return [name for name, holds in self.clauses().items() if holds is False]

    @property
    def passed(self) -> bool:
        return self.both_exhausted or not self.violations()


class BenchRow(BaseModel):
    family: str
    n: int
    principal: int
    transitions: int
    term_size: int
    exhausted: bool = False
    wall_time: float
