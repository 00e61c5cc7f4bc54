"""Cross-checking the machines against the small-step oracles."""
from concurrent.futures import ThreadPoolExecutor
from logging import getLogger
from typing import Callable, Dict, List, Optional

from crumble.constants import DEFAULT_FUEL, DEFAULT_RECURSION_LIMIT, Mode
from crumble.crumbling import body_bound_L, len_measure, translate, var_measure
from crumble.harness.generator import GenConfig, gen_term
from crumble.machine import TransitionLabel, check_vcrumble_final, iota, readback_state, run, state_readback_term, step
from crumble.models.reports import CheckReport, MetricsReport
from crumble.reference import RuleName, Stepped, StepResult, fireball_eval, fireball_step, pif_eval, pif_step
from crumble.syntax import Term, Var, alpha_eq, free_vars, print_term, term_size
from crumble.utils import recursion_limit

_LOG = getLogger(__name__)

_RULES_OF_LABEL: Dict[TransitionLabel, frozenset] = {
    TransitionLabel.BETA: frozenset({RuleName.BETA_V, RuleName.BETA_I}),
    TransitionLabel.IFT: frozenset({RuleName.IFT}),
    TransitionLabel.IFF: frozenset({RuleName.IFF}),
    TransitionLabel.IFE: frozenset({RuleName.IFE}),
    TransitionLabel.APP_ERR: frozenset({RuleName.APP_ERR}),
}
_SUBSTITUTIONS = frozenset({TransitionLabel.SUB_L, TransitionLabel.SUB_IF, TransitionLabel.SUB_VAR})


class CheckFailure(Exception):
    def __init__(self, reports: List[CheckReport]):
        lines = [f"{report.term}: {', '.join(report.violations())}" for report in reports]
        super().__init__(f"{len(reports)} term(s) failed the cross-check:\n" + "\n".join(lines))
        self.reports = reports


def _oracle_step(mode: Mode) -> Callable[[Term], StepResult]:
    return pif_step if mode is Mode.CLOSED else fireball_step


def _ensure_mode_fits(term: Term, mode: Mode) -> None:
    if mode is Mode.CLOSED and free_vars(term):
        raise ValueError(f"The closed machine only runs closed terms, got {print_term(term)}.")


def _transition_budget(term: Term, principal_fuel: int) -> int:
    """Total transitions allowed for ``principal_fuel`` principal ones; overhead is linear in both."""
    return (principal_fuel + 1) * (term_size(term) + 4) + 2


def _rules_match(labels: List[TransitionLabel], rules: List[RuleName]) -> bool:
    return len(labels) == len(rules) and all(rule in _RULES_OF_LABEL[label] for label, rule in zip(labels, rules))


def build_report(
    term: Term, mode: Mode, fuel: int = DEFAULT_FUEL, *, merge_sub_var: bool = False, debug: Optional[bool] = None
) -> CheckReport:
    """Run ``term`` on the oracle of ``mode`` and on the machine and collect every checked clause.

    The recursion limit is raised to ``DEFAULT_RECURSION_LIMIT`` while the term is evaluated.
    """
    _ensure_mode_fits(term, mode)
    with recursion_limit(DEFAULT_RECURSION_LIMIT):
        return _build_report(term, mode, fuel, merge_sub_var, debug)


def _build_report(term: Term, mode: Mode, fuel: int, merge_sub_var: bool, debug: Optional[bool]) -> CheckReport:
    evaluate = pif_eval if mode is Mode.CLOSED else fireball_eval
    reference = evaluate(term, fuel)

    crumble = translate(term)
    size = term_size(term)
    result = run(
        iota(crumble),
        mode,
        _transition_budget(term, fuel),
        principal_fuel=fuel,
        merge_sub_var=merge_sub_var,
        debug=debug,
    )
    metrics = result.metrics
    principal = metrics.principal_count
    sub_l_if = metrics.count(TransitionLabel.SUB_L) + metrics.count(TransitionLabel.SUB_IF)
    sub_var = metrics.count(TransitionLabel.SUB_VAR)
    normalized = not result.exhausted
    measure = var_measure(crumble)

    return CheckReport(
        term=print_term(term),
        mode=mode,
        reference_steps=len(reference.steps),
        principal_count=principal,
        reference_exhausted=reference.exhausted,
        machine_exhausted=result.exhausted,
        final_alpha_equal=alpha_eq(state_readback_term(result.state), reference.term),
        rule_sequence_matches=_rules_match(
            [label for label in result.trace.labels if label.is_principal], reference.steps
        ),
        sub_l_if_bound=sub_l_if <= principal + 1,
        sub_var_bound=sub_var <= 2 * principal + 1,
        substitution_bound=sub_l_if + sub_var <= 3 * principal + 2,
        sea_bound=metrics.count(TransitionLabel.SEA) <= (principal + 1) * size if normalized else None,
        final_harmony=check_vcrumble_final(result.state, mode) if normalized else None,
        size_bound=metrics.initial_crumble_size <= 5 * size,
        var_measure_bound=measure <= 1 and (measure == 1) == isinstance(term, Var),
        metrics=MetricsReport.from_metrics(metrics, result.exhausted),
    )


def cross_check(term: Term, mode: Mode, fuel: int = DEFAULT_FUEL, *, merge_sub_var: bool = False) -> CheckReport:
    """Report for ``term``; raises ``CheckFailure`` when a clause is violated."""
    report = build_report(term, mode, fuel, merge_sub_var=merge_sub_var)
    if not report.passed:
        raise CheckFailure([report])
    return report


def verify_projection(term: Term, mode: Mode, fuel: int = 1000) -> List[str]:
    """Step the machine one transition at a time and describe every broken step-wise property.

    Overhead transitions must leave the read-back unchanged (pops even the read-back crumble),
    principal ones must project on one oracle step with the matching rule, and the unevaluated
    environment never outgrows the initial length plus the bodies appended so far minus the pops.
    """
    _ensure_mode_fits(term, mode)
    with recursion_limit(DEFAULT_RECURSION_LIMIT):
        return _projection_violations(term, mode, fuel)


def _projection_violations(term: Term, mode: Mode, fuel: int) -> List[str]:
    oracle = _oracle_step(mode)
    crumble = translate(term)
    state = iota(crumble)
    bound_per_body = body_bound_L(crumble)
    initial_length = len_measure(crumble)
    violations: List[str] = []
    current = state_readback_term(state)
    appended = pops = 0

    for position in range(fuel):
        before = readback_state(state) if state.unevaluated.top is not None else None
        label = step(state, mode)
        if label is None:
            break
        after = state_readback_term(state)
        if label is TransitionLabel.SEA:
            pops += 1
            if readback_state(state) != before:
                violations.append(f"step {position}: sea changed the read-back crumble")
        elif label in _SUBSTITUTIONS:
            if not alpha_eq(after, current):
                violations.append(f"step {position}: {label.value} changed the read-back term")
        else:
            expected = oracle(current)
            if not isinstance(expected, Stepped):
                violations.append(f"step {position}: {label.value} fired on a term the oracle does not step")
            elif expected.rule not in _RULES_OF_LABEL[label] or not alpha_eq(after, expected.term):
                violations.append(f"step {position}: {label.value} does not project on {expected.rule.value}")
        if label in (TransitionLabel.BETA, TransitionLabel.IFT, TransitionLabel.IFF):
            appended += 1
        if state.unevaluated.length > initial_length + appended * bound_per_body - pops:
            violations.append(f"step {position}: unevaluated environment longer than accounted for")
        current = after
    return violations


def check_many(
    mode: Mode,
    count: int,
    seed: int = 0,
    max_size: int = 60,
    fuel: int = DEFAULT_FUEL,
    workers: int = 1,
    *,
    merge_sub_var: bool = False,
) -> List[CheckReport]:
    """Cross-check ``count`` generated terms, the i-th one from ``seed + i``."""
    configs = [GenConfig(max_size=max_size, closed=mode is Mode.CLOSED, seed=seed + index) for index in range(count)]

    def check_one(config: GenConfig) -> CheckReport:
        return build_report(gen_term(config), mode, fuel, merge_sub_var=merge_sub_var)

    # the limit is process-wide, so it is raised once around all the workers
    with recursion_limit(DEFAULT_RECURSION_LIMIT):
        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as executor:
                reports = list(executor.map(check_one, configs))
        else:
            reports = [check_one(config) for config in configs]

    failed = sum(not report.passed for report in reports)
    _LOG.info(f"Checked {count} {mode.value} terms, {failed} failed.")
    return reports
