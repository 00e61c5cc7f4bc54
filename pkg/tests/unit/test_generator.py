import pytest
from pydantic import ValidationError

from crumble.harness import ConstructorWeights, GenConfig, gen_term
from crumble.syntax import ERR, FALSE, TRUE, Var, free_vars, print_term, term_size


class TestGenTerm:
    @staticmethod
    @pytest.mark.parametrize("closed", [pytest.param(True, id="closed"), pytest.param(False, id="open")])
    def should_be_reproducible_from_the_seed(closed):
        config = GenConfig(max_size=40, closed=closed, seed=7)

        assert print_term(gen_term(config)) == print_term(gen_term(config))

    @staticmethod
    def should_vary_with_the_seed():
        printed = {print_term(gen_term(GenConfig(max_size=40, seed=seed))) for seed in range(20)}

        assert len(printed) > 5

    @staticmethod
    def should_generate_closed_terms_in_closed_mode():
        for seed in range(300):
            assert not free_vars(gen_term(GenConfig(max_size=60, closed=True, seed=seed)))

    @staticmethod
    def should_generate_some_open_terms_in_open_mode():
        terms = [gen_term(GenConfig(max_size=30, closed=False, seed=seed)) for seed in range(50)]

        assert any(free_vars(term) for term in terms)

    @staticmethod
    @pytest.mark.parametrize("max_size", [1, 2, 5, 60])
    def should_not_exceed_the_maximum_size(max_size):
        for seed in range(100):
            assert term_size(gen_term(GenConfig(max_size=max_size, seed=seed))) <= max_size

    @staticmethod
    def should_fall_back_to_constants_without_variables_in_scope():
        for seed in range(30):
            assert gen_term(GenConfig(max_size=1, closed=True, seed=seed)) in {TRUE, FALSE, ERR}

    @staticmethod
    def should_follow_the_weights():
        weights = ConstructorWeights(var=1, lam=0, app=0, cond=0, boolean=0, err=0)

        term = gen_term(GenConfig(max_size=10, closed=False, seed=3, weights=weights, free_names=("q",)))

        assert isinstance(term, Var)
        assert term.var.name_hint == "q"


class TestGenConfig:
    @staticmethod
    def should_reject_an_empty_size():
        with pytest.raises(ValidationError):
            GenConfig(max_size=0)

    @staticmethod
    def should_reject_negative_weights():
        with pytest.raises(ValidationError):
            ConstructorWeights(app=-1)
