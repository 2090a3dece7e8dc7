from fractions import Fraction

import pytest

from chaoslab.errors import ConfigError
from chaoslab.verify import SUITES, CheckResult, VerifyConfig, run_suites

# small knobs so the whole registry stays quick under pytest
FAST = VerifyConfig(gammas=(Fraction(1),), k_max=25, seed=0, trials=5)


@pytest.mark.parametrize("suite", sorted(SUITES))
def test_suite_passes_at_small_scale(suite):
    results = run_suites([suite], FAST)
    assert results
    for r in results:
        assert isinstance(r, CheckResult)
        assert r.suite == suite
        assert r.trials >= 1
        assert r.passed, (r.name, r.failures[:2])
        assert r.failures == ()


def test_run_suites_preserves_order_and_names():
    results = run_suites(["tailmath", "coeffspace"], FAST)
    suites = [r.suite for r in results]
    assert suites == sorted(suites, key=("tailmath", "coeffspace").index)
    names = [r.name for r in results]
    assert len(names) == len(set(names))
    assert "xi-positivity-threshold" in names
    assert "word-enumeration-complete" in names


def test_same_seed_reproduces_everything():
    a = run_suites(["conjugacy"], FAST)
    b = run_suites(["conjugacy"], FAST)
    assert a == b


def test_trials_knob_is_respected():
    tiny = run_suites(["conjugacy"], FAST)
    by_name = {r.name: r for r in tiny}
    assert by_name["shift-square-commutes"].trials == 5
    assert by_name["translation-isometry"].trials == 5


def test_config_validation():
    with pytest.raises(ConfigError):
        VerifyConfig(gammas=(Fraction(-1),))
    with pytest.raises(ConfigError):
        VerifyConfig(gammas=(Fraction(0),))
    with pytest.raises(ConfigError):
        VerifyConfig(k_max=0)
    with pytest.raises(ConfigError):
        VerifyConfig(trials=0)


def test_unknown_suite_rejected():
    with pytest.raises(ConfigError):
        run_suites(["tailmath", "nope"], FAST)


def test_config_defaults_pass_through():
    cfg = VerifyConfig()
    assert cfg.gamma_list((Fraction(2),)) == (Fraction(2),)
    assert cfg.trial_count(17) == 17
    assert FAST.gamma_list((Fraction(2),)) == (Fraction(1),)
    assert FAST.trial_count(100) == 5
