import pytest

from crumble.crumbling import (
    BApp,
    BIf,
    CLam,
    Crumble,
    NotAValue,
    alpha_eq_crumble,
    append,
    body_bound_L,
    crumble_free_vars,
    crumble_size,
    is_v_crumble,
    is_well_named,
    len_measure,
    print_crumble,
    readback,
    readback_suffixes,
    translate,
    translate_value,
    var_measure,
)
from crumble.harness import GenConfig, gen_term
from crumble.syntax import FALSE, TRUE, App, Lam, Var, VarId, alpha_eq, free_vars, parse, term_size
from tests.helpers import decompose, plug
from tests.terms import CLOSED_NORMALIZING, DELTA_DELTA_I, DELTA_DELTA_XX, OPEN_NORMALIZING

_SOURCES = [source for source, _, _ in CLOSED_NORMALIZING + OPEN_NORMALIZING] + [DELTA_DELTA_I, DELTA_DELTA_XX]


def _generated(count: int, closed: bool):
    return [gen_term(GenConfig(max_size=60, closed=closed, seed=seed)) for seed in range(count)]


class TestTranslate:
    @staticmethod
    def should_name_the_function_of_delta_delta_identity():
        # GIVEN
        term = parse(DELTA_DELTA_I)

        # WHEN
        crumble = translate(term)

        # THEN
        assert print_crumble(crumble) == r"(_1 (\z. (z)))[_1<-(\x. (x x)) (\x1. (x1 x1))]"

    @staticmethod
    def should_put_the_function_entry_left_of_the_argument_entry():
        # GIVEN
        table = {}
        term = parse(DELTA_DELTA_XX, free=table)
        x = Var(table["x"])

        # WHEN
        crumble = translate(term)

        # THEN
        assert isinstance(crumble.bite, BApp)
        (function_var, function_bite), (argument_var, argument_bite) = crumble.env
        assert crumble.bite == BApp(Var(function_var), Var(argument_var))
        assert isinstance(function_bite, BApp) and isinstance(function_bite.fun, CLam)
        assert argument_bite == BApp(x, x)

    @staticmethod
    def should_keep_values_as_bites():
        crumble = translate(parse(r"\x. x"))

        assert crumble.env == ()
        assert isinstance(crumble.bite, CLam)
        assert crumble.bite.body == Crumble(Var(crumble.bite.var))

    @staticmethod
    def should_crumble_values_only_on_the_surface():
        value = translate_value(parse(r"\x. (\y. y) x"))

        assert isinstance(value, CLam)
        assert value.body.env == ()

    @staticmethod
    def should_refuse_to_translate_a_non_value_as_a_value():
        with pytest.raises(NotAValue):
            translate_value(parse("x y"))

    @staticmethod
    def should_crumble_branches_separately():
        crumble = translate(parse(r"if (\x. x) true then (\y. y) false else true"))

        assert len(crumble.env) == 1
        assert len(crumble.bite.then_branch.env) == 0  # type: ignore[union-attr]
        assert isinstance(crumble.bite.then_branch.bite, BApp)  # type: ignore[union-attr]


class TestReadback:
    @staticmethod
    @pytest.mark.parametrize("source", [pytest.param(source, id=source) for source in _SOURCES])
    def should_read_back_the_translated_term(source):
        term = parse(source)

        assert alpha_eq(readback(translate(term)), term)

    @staticmethod
    @pytest.mark.parametrize("closed", [pytest.param(True, id="closed"), pytest.param(False, id="open")])
    def should_read_back_generated_terms(closed):
        for term in _generated(500, closed):
            assert alpha_eq(readback(translate(term)), term)

    @staticmethod
    def should_substitute_entries_left_to_right():
        # GIVEN
        x, y, z = VarId.fresh("x"), VarId.fresh("y"), VarId.fresh("z")
        crumble = Crumble(BApp(Var(x), Var(x)), ((x, Var(y)), (y, BApp(Var(z), TRUE))))

        # WHEN
        term = readback(crumble)

        # THEN
        inner = App(Var(z), TRUE)
        assert term == App(inner, inner)

    @staticmethod
    def should_not_be_surjective():
        # GIVEN
        x, y = VarId.fresh("x"), VarId.fresh("y")
        crumble = Crumble(BApp(Var(x), Var(x)), ((x, Var(y)),))

        # WHEN
        term = readback(crumble)

        # THEN
        assert term == App(Var(y), Var(y))
        assert translate(term) != crumble

    @staticmethod
    def should_share_the_term_of_an_entry_used_twice():
        x, z = VarId.fresh("x"), VarId.fresh("z")

        term = readback(Crumble(BApp(Var(x), Var(x)), ((x, BApp(Var(z), TRUE)),)))

        assert term.fun is term.arg  # type: ignore[union-attr]

    @staticmethod
    def should_rename_binders_around_substituted_variables():
        # GIVEN
        x, y = VarId.fresh("x"), VarId.fresh("y")
        crumble = Crumble(CLam(y, Crumble(Var(x))), ((x, Var(y)),))

        # WHEN
        term = readback(crumble)

        # THEN
        assert isinstance(term, Lam)
        assert term.var != y
        assert free_vars(term) == {y}

    @staticmethod
    def should_let_a_binder_shadow_an_entry():
        x = VarId.fresh("x")
        crumble = Crumble(CLam(x, Crumble(Var(x))), ((x, TRUE),))

        assert alpha_eq(readback(crumble), parse(r"\x. x"))

    @staticmethod
    def should_read_back_long_chains_in_one_pass():
        # GIVEN
        names = [VarId.fresh(f"x{index}") for index in range(3001)]
        env = tuple((names[index], BApp(Var(names[index + 1]), TRUE)) for index in range(3000)) + ((names[-1], FALSE),)

        # WHEN
        term = readback(Crumble(Var(names[0]), env))

        # THEN
        depth = 0
        while isinstance(term, App):
            assert term.arg == TRUE
            term, depth = term.fun, depth + 1
        assert term == FALSE
        assert depth == 3000

    @staticmethod
    @pytest.mark.parametrize("closed", [pytest.param(True, id="closed"), pytest.param(False, id="open")])
    def should_read_back_every_suffix(closed):
        for term in _generated(100, closed):
            env = translate(term).env

            suffixes = readback_suffixes(env)

            assert len(suffixes) == len(env)
            for index, (_, bite) in enumerate(env):
                assert alpha_eq(suffixes[index], readback(Crumble(bite, env[index + 1 :])))


class TestWellNamed:
    @staticmethod
    @pytest.mark.parametrize("source", [pytest.param(source, id=source) for source in _SOURCES])
    def should_hold_after_translation(source):
        assert is_well_named(translate(parse(source)))

    @staticmethod
    def should_fail_on_a_repeated_binder():
        x = VarId.fresh("x")

        assert not is_well_named(Crumble(Var(x), ((x, TRUE), (x, FALSE))))

    @staticmethod
    def should_look_into_branches():
        # GIVEN
        x, y = VarId.fresh("x"), VarId.fresh("y")
        distinct = Crumble(TRUE, ((x, BIf(TRUE, Crumble(Var(y), ((y, TRUE),)), Crumble(FALSE))),))
        repeated = Crumble(TRUE, ((x, BIf(TRUE, Crumble(Var(x), ((x, TRUE),)), Crumble(FALSE))),))

        # THEN
        assert is_well_named(distinct)
        assert not is_well_named(repeated)

    @staticmethod
    def should_not_look_into_abstraction_bodies():
        x = VarId.fresh("x")
        body = Crumble(Var(x), ((x, TRUE),))

        assert is_well_named(Crumble(TRUE, ((x, CLam(VarId.fresh("a"), body)),)))


class TestMeasures:
    @staticmethod
    @pytest.mark.parametrize("closed", [pytest.param(True, id="closed"), pytest.param(False, id="open")])
    def should_stay_within_five_times_the_term_size(closed):
        for term in _generated(300, closed):
            assert crumble_size(translate(term)) <= 5 * term_size(term)

    @staticmethod
    @pytest.mark.parametrize("closed", [pytest.param(True, id="closed"), pytest.param(False, id="open")])
    def should_count_one_variable_bite_only_for_variables(closed):
        for term in _generated(300, closed):
            measure = var_measure(translate(term))
            assert measure <= 1
            assert (measure == 1) == isinstance(term, Var)

    @staticmethod
    def should_measure_a_variable():
        assert var_measure(translate(parse("x"))) == 1
        assert len_measure(translate(parse("x"))) == 1

    @staticmethod
    def should_measure_delta_delta_x_x():
        crumble = translate(parse(DELTA_DELTA_XX))

        assert len_measure(crumble) == 3
        assert var_measure(crumble) == 0
        assert body_bound_L(crumble) == 1

    @staticmethod
    def should_bound_bodies_by_the_term_size():
        for term in _generated(200, closed=False):
            assert body_bound_L(translate(term)) <= term_size(term)

    @staticmethod
    def should_find_the_longest_nested_body():
        crumble = translate(parse(r"\a. (\b. x (y (z b))) a"))

        assert body_bound_L(crumble) == 3


class TestEnvironments:
    @staticmethod
    def should_append_on_the_right():
        # GIVEN
        x, y = VarId.fresh("x"), VarId.fresh("y")
        crumble = Crumble(Var(x), ((x, Var(y)),))

        # WHEN
        appended = append(crumble, [(y, TRUE)])

        # THEN
        assert appended == Crumble(Var(x), ((x, Var(y)), (y, TRUE)))
        assert crumble_free_vars(appended) == frozenset()
        assert crumble_free_vars(crumble) == {y}

    @staticmethod
    @pytest.mark.parametrize("source", [pytest.param(source, id=source) for source in _SOURCES])
    def should_keep_free_variables(source):
        term = parse(source)

        assert crumble_free_vars(translate(term)) == free_vars(term)

    @staticmethod
    def should_equate_crumbles_up_to_binder_names():
        assert alpha_eq_crumble(translate(parse(DELTA_DELTA_I)), translate(parse(DELTA_DELTA_I)))
        assert not alpha_eq_crumble(translate(parse(r"\x. \y. x")), translate(parse(r"\x. \y. y")))


class TestDecompose:
    @staticmethod
    @pytest.mark.parametrize("source", [pytest.param(source, id=source) for source in _SOURCES])
    def should_plug_back_every_split(source):
        crumble = translate(parse(source))

        for context, inner in decompose(crumble):
            assert plug(context, inner) == crumble

    @staticmethod
    def should_split_at_every_entry():
        crumble = translate(parse(DELTA_DELTA_XX))

        assert len(decompose(crumble)) == len_measure(crumble)

    @staticmethod
    def should_find_only_v_crumbles_inside_a_v_crumble():
        # GIVEN
        x, y = VarId.fresh("x"), VarId.fresh("y")
        crumble = Crumble(TRUE, ((x, translate(parse(r"\a. a")).bite), (y, FALSE)))

        # WHEN
        splits = decompose(crumble)

        # THEN
        assert is_v_crumble(crumble)
        assert all(is_v_crumble(inner) for _, inner in splits)
