"""Coefficient systems: transcription agreement and the exact identities."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pqatlas import coeffs
from pqatlas.exprcas import eval_rational, expr_equal, parse_expr, poly_coeffs_in, rat, var


def test_A_examples():
    assert coeffs.A_func(0, 6) == Fraction(1, 3)
    assert coeffs.A_func(-1, 7) == -2
    assert coeffs.A_func(Fraction(2, 2), 4) == 0  # x = 2/(n-2) at n = 4
    with pytest.raises(ValueError):
        coeffs.A_func(1, 0)


def test_B_examples():
    assert coeffs.B_func(0, 0, 4, 1) == -1
    assert expr_equal(coeffs.B_func(rat(0), rat(0), var("n"), var("l")), parse_expr("4/n - 2*l"))
    e = coeffs.B_func(rat(-1), var("y"), var("n"), var("l"))
    assert expr_equal(e, parse_expr("4*y - 2*l"))


def test_corpus_A_matches_handcoded():
    corp = coeffs.load_corpus()
    assert expr_equal(corp["Afun"], coeffs.A_func(var("x"), var("n")))
    assert expr_equal(corp["Bfun"], coeffs.B_func(var("x"), var("y"), var("n"), var("l")))


def test_two_source_transcription():
    report = coeffs.crosscheck_transcriptions()
    assert report.ok, report.to_text()
    assert len(report.entries) == 6 + 3 + 10


def test_S_reduction_identities():
    report = coeffs.verify_S_reduction()
    assert report.ok, report.to_text()
    assert len(report.entries) == 9


def test_S_reduction_numeric_spot_check():
    # Both sides of the i = 2 identity agree exactly at a generic point.
    bindings = {
        "n": 5,
        "q": Fraction(1, 2),
        "beta": Fraction(1, 3),
        "d": 2,
        "sigma": Fraction(-1, 7),
        "delta": 0,
        "tau": Fraction(-1, 9),
        "l": 3,
    }
    bindings["gamma"] = Fraction(-1)
    bindings["k"] = -(1 - bindings["q"] / 2) * bindings["beta"]
    lhs = eval_rational(coeffs.handcoded_S_full()[1], bindings)
    factor = (1 - bindings["q"] / 2) ** 3
    rhs = factor * eval_rational(coeffs.handcoded_S_reduced()[1], bindings)
    assert lhs == rhs


@pytest.mark.parametrize("which", ["rho", "eps"])
def test_I_asymptotics(which):
    report = coeffs.verify_I_asymptotics(which)
    assert report.ok, report.to_text()


def test_I_expansion_degrees():
    # Degree <= 3 in rho and <= 4 in eps for every entry.
    for e in coeffs.corpus_system("I_full").entries:
        red = coeffs.reduce_expr(e)
        poly_coeffs_in(red, "rho", 3)
        poly_coeffs_in(red, "eps", 4)


def test_I10_single_monomial():
    e = coeffs.reduce_expr(coeffs.corpus_system("I_full").entries[9])
    cs = poly_coeffs_in(e, "rho", 3)
    from pqatlas.exprcas import is_zero_expr

    assert is_zero_expr(cs[0]) and is_zero_expr(cs[1]) and is_zero_expr(cs[2])
    expected = coeffs.reduce_expr(
        var("eps") ** 4 * var("d") ** 3 * (1 - var("q") / 2) * coeffs.A_func(var("tau"), var("n"))
    )
    assert expr_equal(cs[3], expected)


class TestCriticalVanishing:
    def test_example_points(self):
        assert coeffs.critical_vanishing(3, Fraction(1, 2))
        assert coeffs.critical_vanishing(6, Fraction(1, 4))

    def test_precondition(self):
        with pytest.raises(ValueError):
            coeffs.critical_vanishing(3, Fraction(1))

    def test_off_critical_does_not_vanish(self):
        bindings = coeffs.critical_parameters(3, Fraction(1, 2))
        bindings["l"] += 1  # off the critical curve
        vals = [eval_rational(e, bindings) for e in coeffs.handcoded_S_full()]
        assert any(v != 0 for v in vals)

    def test_symbolic_vanishing_in_n_and_q(self):
        # Stronger than the grid: with n, q left symbolic the substituted
        # coefficients vanish as rational functions.
        from pqatlas.exprcas import is_zero_expr, substitute_many

        n, q = var("n"), var("q")
        beta = rat(2) / (n - 2)
        denom = n - (n - 1) * q
        repl = {
            "l": (2 - q) ** 2 / ((1 - q) * (n - 2)),
            "beta": beta,
            "delta": beta,
            "gamma": rat(-1),
            "k": -(1 - q / rat(2)) * beta,
            "d": (n - 2) * (1 - q) / denom,
            "sigma": -q / denom,
            "tau": -q / denom,
        }
        for e in coeffs.handcoded_S_full():
            assert is_zero_expr(substitute_many(e, repl))


class TestPositivityWitness:
    def test_n2_case(self):
        beta, d, sigma = coeffs.positivity_witness(2, Fraction(5, 2), Fraction(1, 2))
        assert (d, sigma) == (0, 0)
        vals = self._values(2, Fraction(5, 2), Fraction(1, 2), beta, d, sigma)
        assert vals[1] == 2 and vals[2] == 1 and vals[0] > 0

    def test_case3_has_beta_zero(self):
        w = coeffs.positivity_witness(6, Fraction(6, 5), Fraction(6, 5))
        assert w is not None and w[0] == 0

    def test_case2_example(self):
        w = coeffs.positivity_witness(6, Fraction(3, 2), Fraction(3, 10))
        assert w is not None
        vals = self._values(6, Fraction(3, 2), Fraction(3, 10), *w)
        assert all(v > 0 for v in vals)

    def test_precondition_violations(self):
        with pytest.raises(ValueError):
            coeffs.positivity_witness(6, Fraction(4), Fraction(1, 2))  # l beyond critical

    @staticmethod
    def _values(n, p, q, beta, d, sigma):
        b = {"n": Fraction(n), "q": q, "l": p + q - 1, "beta": beta, "d": d, "sigma": sigma}
        return [eval_rational(e, b) for e in coeffs.handcoded_S_reduced()]

    @settings(max_examples=30, deadline=None)
    @given(
        st.integers(3, 8),
        st.fractions(min_value=0, max_value=Fraction(9, 10), max_denominator=10),
        st.fractions(min_value=Fraction(1, 10), max_value=Fraction(9, 10), max_denominator=10),
    )
    def test_random_case2_points_certify(self, n, q, t):
        lo = Fraction(2, n - 2)
        hi = (2 - q) ** 2 / ((1 - q) * (n - 2))
        l = lo + t * (hi - lo)
        if l >= hi:
            return
        p = l + 1 - q
        w = coeffs.positivity_witness(n, p, q)
        assert w is not None
        assert all(v > 0 for v in self._values(n, p, q, *w))


def test_s3_quadratic_check():
    report = coeffs.s3_quadratic_check()
    assert report.ok, report.to_text()
    # The displayed middle coefficient is reported as a mismatch.
    by_name = {e.name: e for e in report.entries}
    assert by_name["displayed middle coefficient matches derived"].status == "mismatch"


def test_s3_quadratic_value_at_n3_theta1():
    theta = var("theta")
    n = var("n")
    q = var("q")
    sigma = (2 - n * theta) / (2 * (n - 1))
    expr = coeffs.A_func(sigma, n) + (q - 1 - 2 * sigma) * theta - q / rat(2) * theta**2
    from pqatlas.exprcas import substitute

    e = substitute(substitute(expr, "n", rat(3)), "theta", rat(1))
    assert expr_equal(e, parse_expr("q/2 - 1/4"))
