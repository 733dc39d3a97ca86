from fractions import Fraction
import pytest
from Sumprod.Utils.error_management import NoValidPrimorial, DensityFailure, ResourceLimit, SignRestriction
from Sumprod.Utils.configuration_management import get_knob_manager, BinaryOp
from Sumprod.Tool.set_core.finite_set import make_set
from Sumprod.Tool.set_core.set_operations import binary_op_size
from Sumprod.Tool.construction.arithmetic_functions import primes_below, primorial, f_value, g_value, \
    selection_threshold
from Sumprod.Tool.construction.parameters import ConstructionParams, choose_parameters
from Sumprod.Tool.construction.construction import construct_set, exact_measure, residue_profile, block_density
from Sumprod.Tool.construction.moments import exponential_moment_check, markov_residue_bound, product_formula, \
    superadditivity_check, periodicity_check


def brute_aa_plus_ma(A, m):
    return len({a * b + m * c for a in A for b in A for c in A})


class TestArithmeticFunctions:

    def test_primes_below(self):
        assert primes_below(2) == ()
        assert primes_below(3) == (2,)
        assert primes_below(20) == (2, 3, 5, 7, 11, 13, 17, 19)
        assert primorial(7) == 30

    @pytest.mark.parametrize("x, y, expected", [(12, 5, 2), (1, 5, 0), (1, 11, 0), (35, 5, 0), (30, 7, 3)])
    def test_f_value(self, x, y, expected):
        assert f_value(x, y) == expected

    @pytest.mark.parametrize("x, y, expected", [(12, 5, 3), (1, 7, 0), (50, 5, 1), (36, 5, 4), (8, 3, 2)])
    def test_g_value(self, x, y, expected):
        assert g_value(x, y) == expected

    def test_y_two_threshold_is_finite(self):
        # log log 2 < 0, the square-root term drops out
        assert selection_threshold(2, "e") < 0
        assert selection_threshold(2, "2") == 0

    def test_periodicity(self):
        assert periodicity_check(5)
        assert periodicity_check(7)


class TestParameters:

    def test_n_100(self):
        params = choose_parameters(100)
        assert (params.q, params.m, params.primes) == (6, 36, (2, 3))

    def test_n_10(self):
        params = choose_parameters(10)
        assert (params.q, params.m) == (2, 4)

    def test_largest_primorial_below_sqrt(self):
        params = choose_parameters(10 ** 6)
        assert params.q == 210 and params.q ** 2 < 10 ** 6 < (params.q * 11) ** 2

    @pytest.mark.parametrize("n", [1, 4])
    def test_no_primorial(self, n):
        with pytest.raises(NoValidPrimorial):
            choose_parameters(n)

    def test_theta_override_keeps_the_formula_value(self):
        params = ConstructionParams(20, 5).with_theta(0.25)
        assert params.overridden and params.theta == 0.25
        assert params.formula_theta == pytest.approx(selection_threshold(5, "e"))

    def test_log_base_knob(self):
        get_knob_manager().override_knob('log_base', '2')
        assert ConstructionParams(20, 5).log_base == "2"


class TestConstruction:

    def test_negative_theta_takes_an_interval(self):
        report = construct_set(10, choose_parameters(10), measure=False)
        assert report.params.theta < 0
        assert [int(value) for value in report.A] == list(range(1, 11))

    def test_theta_override(self):
        report = construct_set(5, ConstructionParams(5, 5), theta_override=0.5, measure=False)
        assert [int(value) for value in report.A] == [2, 3, 4, 6, 8]
        assert report.A_in_range

    def test_period_wider_than_the_range(self):
        # q = 30 > 3n, so no complete block of length q fits in [1, 15]
        report = construct_set(5, ConstructionParams(5, 7), theta_override=0)
        assert [int(value) for value in report.A] == [2, 3, 4, 5, 6]
        assert report.block_density_min is None and report.block_density_holds is None
        assert report.size_AA == 14
        assert report.size_AA_plus_mA == brute_aa_plus_ma(report.A.as_ints(), 900) == 70
        assert "block_density_min=" in report.to_text().splitlines()
        assert block_density(5, ConstructionParams(5, 7)) == (None, None)

    def test_density_failure(self):
        with pytest.raises(DensityFailure):
            construct_set(5, ConstructionParams(5, 5), theta_override=5.0, measure=False)

    def test_measured_report(self):
        n = 200
        report = construct_set(n, choose_parameters(n))
        A = report.A
        assert len(A) == n and report.A_in_range and report.sumset_in_range
        assert report.size_AA == binary_op_size(BinaryOp.PRODUCT, A, A)
        assert report.normalized == Fraction(report.size_AA_plus_mA, n * n)
        assert report.residue_bound_holds
        assert "exponent_labels=1-2log2,2ln2-1" in report.to_text()

    def test_block_density(self):
        minimum, holds = block_density(100, choose_parameters(100))
        assert minimum >= 0
        assert holds == (2 * minimum >= 6)


class TestExactMeasure:

    @pytest.mark.parametrize("values, m, expected", [([1, 2], 4, (3, 6)), ([1], 1, (1, 1)),
                                                     ([1, 2, 3], 2, (6, 12))])
    def test_examples(self, values, m, expected):
        assert exact_measure(make_set(values), m) == expected

    def test_agrees_with_enumeration(self, random_set):
        for m in (1, 4, 36, 100):
            A = random_set(20, 90)
            size_aa, size_sumset = exact_measure(A, m)
            assert size_aa == binary_op_size(BinaryOp.PRODUCT, A, A)
            assert size_sumset == brute_aa_plus_ma(A.as_ints(), m)

    def test_fft_columns_match_shift_or(self, random_set):
        A = random_set(80, 240)
        assert exact_measure(A, 36)[1] == brute_aa_plus_ma(A.as_ints(), 36)

    def test_batched_columns(self, budget):
        A = make_set([3, 7, 12, 20, 33, 41, 50, 64, 77, 90])
        m = 36
        rows = 90 * 90 // m + 1
        out_rows = rows + 90 - 3
        # room for the grid and three columns at a time
        tight = budget(memory_budget_bytes=rows * m + 3 * out_rows)
        expected = (binary_op_size(BinaryOp.PRODUCT, A, A), brute_aa_plus_ma(A.as_ints(), m))
        assert exact_measure(A, m, tight) == expected

    def test_over_budget(self, budget):
        with pytest.raises(ResourceLimit) as info:
            exact_measure(make_set(range(1, 50)), 36, budget(memory_budget_bytes=10))
        assert "residue_profile" in str(info.value)

    def test_needs_positive_integers(self):
        with pytest.raises(SignRestriction):
            exact_measure(make_set([-1, 2]), 4)
        with pytest.raises(SignRestriction):
            exact_measure(make_set(["1/2", 2]), 4)


class TestResidueProfile:

    def test_full_interval(self):
        assert residue_profile(make_set(range(1, 11)), 4) == (4, Fraction(1))

    def test_even_pair(self):
        assert residue_profile(make_set([2, 4]), 4) == (1, Fraction(1, 4))

    def test_singleton(self):
        assert residue_profile(make_set([1]), 4)[0] == 1

    def test_matches_products(self, random_set):
        A = random_set(15, 300)
        modulus = 36
        products = {a * b % modulus for a in A.as_ints() for b in A.as_ints()}
        assert residue_profile(A, modulus)[0] == len(products)


class TestMoments:

    def test_y3(self):
        assert exponential_moment_check(3) == (Fraction(2), Fraction(2), True)

    def test_y2_is_trivial(self):
        assert exponential_moment_check(2) == (Fraction(1), Fraction(1), True)

    def test_y5(self):
        expected, average, equal = exponential_moment_check(5)
        assert expected == Fraction(28, 9) == average and equal

    @pytest.mark.parametrize("y", [7, 11])
    def test_formula_equals_average(self, y):
        assert exponential_moment_check(y)[2]

    def test_product_formula(self):
        assert product_formula(7) == Fraction(28, 9) * Fraction(32, 25)

    def test_over_the_block_limit(self):
        with pytest.raises(ResourceLimit):
            exponential_moment_check(13)

    def test_markov_negative_threshold(self):
        threshold, classes_above, bound, holds = markov_residue_bound(3)
        assert threshold < 0
        assert classes_above == 4
        assert bound >= 4
        assert holds

    @pytest.mark.parametrize("y", [5, 7, 11])
    def test_markov_holds(self, y):
        threshold, classes_above, bound, holds = markov_residue_bound(y)
        assert classes_above <= bound
        assert holds

    def test_markov_binary_logs(self):
        assert markov_residue_bound(11, log_base="2")[3]

    def test_markov_over_the_block_limit(self):
        with pytest.raises(ResourceLimit):
            markov_residue_bound(13)

    def test_superadditivity(self):
        violations, checked = superadditivity_check(7, 60)
        assert violations == 0 and checked == 3600


@pytest.mark.slow
class TestAcceptanceScale:

    @pytest.mark.parametrize("y", [2, 3, 5, 7, 11])
    def test_moment_identity(self, y):
        expected, average, equal = exponential_moment_check(y)
        assert equal and expected == average

    @pytest.mark.parametrize("y", [3, 5, 7, 11, 13])
    def test_superadditivity_exhaustive(self, y):
        assert superadditivity_check(y, 2000) == (0, 2000 * 2000)

    @pytest.mark.parametrize("log_base", ["e", "2"])
    @pytest.mark.parametrize("y", [2, 3, 5, 7, 11])
    def test_markov_bound_and_inclusion(self, y, log_base):
        threshold, classes_above, bound, holds = markov_residue_bound(y, log_base=log_base)
        assert classes_above <= bound
        assert holds

    @pytest.mark.parametrize("n", [10 ** 3, 10 ** 4])
    def test_construction_ranges(self, n, budget):
        report = construct_set(n, choose_parameters(n), budget=budget(memory_budget_bytes=1024 ** 3))
        assert len(report.A) == n
        assert report.A_in_range and report.sumset_in_range
        # AA + mA lies in [1, 10 n^2]
        assert report.normalized <= 10
        assert report.residue_bound_holds

    def test_residue_profile_matches_products(self):
        n = 2000
        report = construct_set(n, choose_parameters(n), measure=False)
        m = report.params.m
        ints = report.A.as_ints()
        products = {a * b % m for a in ints for b in ints}
        assert residue_profile(report.A, m) == (len(products), Fraction(len(products), m))
