from fractions import Fraction
from itertools import combinations
import pytest
from Sumprod.Utils.error_management import EmptySet, InputFormat, DivisorZero, ResourceLimit, NotWellSpaced, \
    Degenerate, ZeroInMultiplicativeEnergy, SignRestriction
from Sumprod.Utils.configuration_management import SignSummary, BinaryOp, EnergyKind
from Sumprod.Utils.statistics_managment import get_statistics_manager
from Sumprod.Tool.set_core.exact_scalar import parse_scalar, format_scalar, common_scale
from Sumprod.Tool.set_core.finite_set import make_set
from Sumprod.Tool.set_core.set_io import read_set_file, write_set_file
from Sumprod.Tool.set_core.set_operations import binary_op, binary_op_size, combine, aa_plus_a_size, ruzsa_ratio, \
    max_dilate_identity, sign_dichotomy
from Sumprod.Tool.set_core.energy import energy, energy_bounds_report
from Sumprod.Tool.set_core.oracles import brute_binary_op, brute_combine, brute_energy


def ints(A):
    return [int(value) for value in A]


class TestScalarsAndSets:

    def test_parse_scalar_reduces_rationals(self):
        assert parse_scalar("3/6") == Fraction(1, 2)
        assert parse_scalar("-4") == -4
        assert parse_scalar(" +7 ") == 7

    @pytest.mark.parametrize("text", ["1.5", "1e3", "1/0", "1 000", "", "2/-3"])
    def test_parse_scalar_rejects(self, text):
        with pytest.raises(ValueError):
            parse_scalar(text)

    def test_format_scalar(self):
        assert format_scalar(Fraction(5)) == "5"
        assert format_scalar(Fraction(-3, 4)) == "-3/4"

    def test_common_scale(self):
        assert common_scale([Fraction(1, 2), Fraction(1, 3), Fraction(2)]) == (6, (3, 2, 12))

    def test_make_set_sorts_and_dedupes(self):
        A = make_set([3, 1, 2, 2])
        assert ints(A) == [1, 2, 3]
        assert A.sign_summary is SignSummary.ALL_POSITIVE

    @pytest.mark.parametrize("values, summary", [
        ([-1, 1], SignSummary.MIXED),
        ([0], SignSummary.CONTAINS_ZERO),
        ([-2, 0, 5], SignSummary.CONTAINS_ZERO),
        ([-3, -1], SignSummary.ALL_NEGATIVE),
    ])
    def test_sign_summary(self, values, summary):
        assert make_set(values).sign_summary is summary

    def test_make_set_rejects_empty_and_floats(self):
        with pytest.raises(EmptySet):
            make_set([])
        with pytest.raises(TypeError):
            make_set([0.5])

    def test_mixed_inputs_are_exact(self):
        A = make_set(["1/2", Fraction(2, 4), 1])
        assert A.elements == (Fraction(1, 2), Fraction(1))
        assert not A.is_integral
        assert A.scaled() == (2, (1, 2))


class TestSetFiles:

    def test_round_trip_with_comments(self, tmp_path):
        path = tmp_path / "a.txt"
        path.write_text("# header\n\n3\n-1/2\n  7  \n3\n", encoding="utf-8")
        A = read_set_file(path)
        assert A.elements == (Fraction(-1, 2), Fraction(3), Fraction(7))
        out = tmp_path / "b.txt"
        write_set_file(out, A, comment="copy")
        assert out.read_text(encoding="utf-8") == "# copy\n-1/2\n3\n7\n"
        assert read_set_file(out) == A

    def test_malformed_line_reports_its_number(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("1\n# ok\n2.5\n", encoding="utf-8")
        with pytest.raises(InputFormat) as info:
            read_set_file(path)
        assert info.value.line_number == 3
        assert "bad.txt:3" in str(info.value)

    def test_missing_file(self, tmp_path):
        with pytest.raises(InputFormat):
            read_set_file(tmp_path / "nope.txt")

    def test_only_comments_is_empty(self, tmp_path):
        path = tmp_path / "empty.txt"
        path.write_text("# nothing\n\n", encoding="utf-8")
        with pytest.raises(EmptySet):
            read_set_file(path)


class TestBinaryOps:

    def test_sum_of_interval(self):
        assert ints(binary_op(BinaryOp.SUM, make_set([1, 2, 3]), make_set([1, 2, 3]))) == [2, 3, 4, 5, 6]

    def test_product_of_geometric_progression(self):
        A = make_set([2, 4, 8])
        assert ints(binary_op("product", A, A)) == [4, 8, 16, 32, 64]

    def test_ratio_set(self):
        A = make_set([1, 2, 4])
        expected = [Fraction(1, 4), Fraction(1, 2), Fraction(1), Fraction(2), Fraction(4)]
        assert list(binary_op(BinaryOp.RATIO, A, A)) == expected

    def test_difference_set(self):
        A = make_set([1, 2, 3])
        assert ints(binary_op(BinaryOp.DIFFERENCE, A, A)) == [-2, -1, 0, 1, 2]

    def test_ratio_with_zero_divisor(self):
        with pytest.raises(DivisorZero):
            binary_op(BinaryOp.RATIO, make_set([1, 2]), make_set([0, 1]))

    def test_rational_sums(self):
        result = binary_op(BinaryOp.SUM, make_set(["1/2", 1]), make_set(["1/3"]))
        assert list(result) == [Fraction(5, 6), Fraction(4, 3)]

    def test_sizes_match_elements(self):
        A = make_set([1, 3, 4, 9, 10])
        for op in BinaryOp:
            assert binary_op_size(op, A, A) == len(binary_op(op, A, A))

    @pytest.mark.parametrize("op", list(BinaryOp))
    def test_agrees_with_oracle(self, op, rng):
        for _ in range(20):
            A = make_set([Fraction(rng.randint(-30, 30), rng.randint(1, 4)) for _ in range(rng.randint(1, 12))])
            B = make_set([Fraction(rng.randint(1, 30), rng.randint(1, 3)) for _ in range(rng.randint(1, 12))])
            assert set(binary_op(op, A, B)) == brute_binary_op(op, A, B)

    def test_python_path_matches_numpy_path(self, budget, random_set):
        A = random_set(40, 5000)
        B = random_set(30, 5000)
        python_only = budget(int_fast_path_max_magnitude=0)
        for op in (BinaryOp.SUM, BinaryOp.PRODUCT):
            assert binary_op(op, A, B, python_only) == binary_op(op, A, B, budget())

    @pytest.mark.parametrize("op", [BinaryOp.SUM, BinaryOp.PRODUCT])
    def test_commutative(self, op, rng, random_set):
        for _ in range(15):
            A, B = random_set(rng.randint(1, 15), 200), random_set(rng.randint(1, 15), 200)
            assert binary_op(op, A, B) == binary_op(op, B, A)
            C = make_set([Fraction(rng.randint(-20, 20), rng.randint(1, 5)) for _ in range(rng.randint(1, 10))])
            assert binary_op(op, A, C) == binary_op(op, C, A)

    def test_sum_commutes_with_dilation(self, rng, random_set):
        for alpha in (Fraction(3), Fraction(-2, 7), Fraction(5, 3)):
            A, B = random_set(rng.randint(1, 12), 100), random_set(rng.randint(1, 12), 100)
            assert binary_op(BinaryOp.SUM, A.dilate(alpha), B.dilate(alpha)) == \
                binary_op(BinaryOp.SUM, A, B).dilate(alpha)

    def test_product_scales_by_both_factors(self, rng, random_set):
        for alpha, beta in ((Fraction(2), Fraction(1, 3)), (Fraction(-3, 4), Fraction(5)), (Fraction(7), Fraction(-1))):
            A, B = random_set(rng.randint(1, 12), 100), random_set(rng.randint(1, 12), 100)
            assert binary_op(BinaryOp.PRODUCT, A.dilate(alpha), B.dilate(beta)) == \
                binary_op(BinaryOp.PRODUCT, A, B).dilate(alpha * beta)


def is_arithmetic(values):
    return all(values[i + 1] - values[i] == values[1] - values[0] for i in range(len(values) - 1))


def is_geometric(values):
    return all(values[i + 1] / values[i] == values[1] / values[0] for i in range(len(values) - 1))


class TestExtremalIdentities:

    @pytest.mark.parametrize("n", [2, 3, 5, 16, 100, 512])
    def test_arithmetic_progression(self, n):
        A = make_set([Fraction(7 + 3 * k, 2) for k in range(n)])
        assert binary_op_size(BinaryOp.SUM, A, A) == 2 * n - 1
        assert binary_op_size(BinaryOp.DIFFERENCE, A, A) == 2 * n - 1

    @pytest.mark.parametrize("n", [2, 3, 5, 16, 100, 512])
    def test_geometric_progression(self, n):
        A = make_set([2 ** k for k in range(n)])
        assert binary_op_size(BinaryOp.PRODUCT, A, A) == 2 * n - 1
        assert binary_op_size(BinaryOp.RATIO, A, A) == 2 * n - 1
        # 2^i + 2^j are pairwise distinct
        assert binary_op_size(BinaryOp.SUM, A, A) == n * (n + 1) // 2

    def test_geometric_aa_plus_a_closed_form(self):
        for n in range(1, 65):
            A = make_set([2 ** k for k in range(n)])
            assert aa_plus_a_size(A) == (3 * n * n - n) // 2
            if n <= 12:
                assert len(brute_combine(A, A, A)) == (3 * n * n - n) // 2

    @pytest.mark.parametrize("n", [2, 5, 64])
    def test_rational_ratio_progression(self, n):
        A = make_set([Fraction(3 ** k, 2 ** k) for k in range(n)])
        assert binary_op_size(BinaryOp.PRODUCT, A, A) == 2 * n - 1

    def test_sumset_minimum_only_on_progressions(self):
        grid = [Fraction(k, 2) for k in range(10)]
        for size in range(1, 9):
            for values in combinations(grid, size):
                A = make_set(values)
                assert (binary_op_size(BinaryOp.SUM, A, A) == 2 * size - 1) == is_arithmetic(A.elements), values

    def test_product_set_minimum_only_on_progressions(self):
        grid = [Fraction(1, 2), Fraction(2, 3), Fraction(1), Fraction(3, 2), Fraction(2), Fraction(3), Fraction(4),
                Fraction(9, 2), Fraction(6), Fraction(8)]
        for size in range(1, 9):
            for values in combinations(grid, size):
                A = make_set(values)
                assert (binary_op_size(BinaryOp.PRODUCT, A, A) == 2 * size - 1) == is_geometric(A.elements), values

    def test_streamed_count_equals_exact(self, budget, random_set):
        A = random_set(40, 10000)
        B = random_set(35, 10000)
        exact = len(brute_binary_op(BinaryOp.SUM, A, B))
        assert binary_op_size(BinaryOp.SUM, A, B, budget(memory_budget_bytes=1)) == exact
        assert get_statistics_manager().get('streamed_counts') == 1

    def test_over_budget_without_streaming(self, budget, random_set):
        A = random_set(40, 10000)
        with pytest.raises(ResourceLimit) as info:
            binary_op_size(BinaryOp.SUM, A, A, budget(memory_budget_bytes=1, streamed_count=False))
        assert info.value.exit_code == 2


class TestCombine:

    def test_small_example(self):
        A = make_set([1, 2])
        result = combine(A, A, A)
        assert ints(result.elements) == [2, 3, 4, 5, 6]
        assert result.cardinality == 5
        assert not result.streamed

    def test_singleton(self):
        A = make_set([1])
        assert ints(combine(A, A, A).elements) == [2]

    def test_geometric_closed_form(self):
        for n in range(1, 13):
            A = make_set([2 ** k for k in range(n)])
            assert aa_plus_a_size(A) == (3 * n * n - n) // 2
        assert aa_plus_a_size(make_set([1, 2, 4])) == 12

    def test_count_only_matches_elements(self, random_set):
        A = random_set(15, 200)
        B = random_set(12, 200)
        C = random_set(10, 200)
        materialized = combine(A, B, C)
        assert combine(A, B, C, materialize=False).cardinality == materialized.cardinality
        assert set(materialized.elements) == brute_combine(A, B, C)

    def test_rational_and_negative(self):
        A = make_set(["-1/2", 1, 3])
        B = make_set([2, "1/3"])
        C = make_set([-1, "5/4"])
        assert set(combine(A, B, C).elements) == brute_combine(A, B, C)

    def test_streams_past_the_budget(self, budget):
        A = make_set(range(1, 31))
        tight = budget(memory_budget_bytes=50_000, int_fast_path_max_range=0)
        result = combine(A, A, A, budget=tight)
        assert result.elements is None
        assert result.streamed
        assert result.cardinality == len(brute_combine(A, A, A))

    def test_budget_without_streaming_raises(self, budget):
        A = make_set(range(1, 31))
        with pytest.raises(ResourceLimit):
            combine(A, A, A, budget=budget(memory_budget_bytes=50_000, int_fast_path_max_range=0,
                                           streamed_count=False))


class TestInequalities:

    def test_ruzsa_interval(self):
        A = make_set([1, 2, 3])
        assert ruzsa_ratio(A, A, A) == Fraction(25, 15)

    def test_ruzsa_singletons(self):
        assert ruzsa_ratio(make_set([5]), make_set([5]), make_set([5])) == 1

    def test_ruzsa_mixed(self):
        assert ruzsa_ratio(make_set([1, 2]), make_set([1, 2, 3]), make_set([10])) == Fraction(6, 4)

    def test_ruzsa_at_least_one(self, rng):
        for _ in range(30):
            sets = [make_set(rng.sample(range(-40, 40), rng.randint(1, 10))) for _ in range(3)]
            assert ruzsa_ratio(*sets) >= 1

    @pytest.mark.parametrize("values, size", [([1, 2, 3], 9), ([2, 3, 5], 9), ([7], 1)])
    def test_max_dilate(self, values, size):
        assert max_dilate_identity(make_set(values)) == (size, True)

    def test_max_dilate_random_integers(self, random_set):
        for _ in range(10):
            A = random_set(8, 60)
            assert max_dilate_identity(A)[1]

    def test_max_dilate_needs_spacing(self):
        with pytest.raises(NotWellSpaced):
            max_dilate_identity(make_set([1, "3/2"]))

    @pytest.mark.parametrize("values", [[0, 1], [-2, 3, 5], [-4, -1]])
    def test_max_dilate_needs_positive_elements(self, values):
        with pytest.raises(SignRestriction):
            max_dilate_identity(make_set(values))

    def test_sign_dichotomy(self):
        report = sign_dichotomy(make_set([-3, -1, 2]))
        assert (report.positive_size, report.negative_size) == (1, 2)
        assert report.chosen == "negative"
        assert report.aa_plus_a_positive == 1
        assert report.aa_minus_a_negative == 5
        assert report.identity_holds

    def test_sign_dichotomy_zero(self):
        with pytest.raises(Degenerate):
            sign_dichotomy(make_set([0]))


class TestEnergy:

    def test_additive_interval(self):
        assert energy(EnergyKind.ADDITIVE, make_set([1, 2, 3])) == 19

    def test_singleton(self):
        assert energy("additive", make_set([4])) == 1

    def test_multiplicative_geometric(self):
        assert energy(EnergyKind.MULTIPLICATIVE, make_set([1, 2, 4])) == 19

    def test_multiplicative_is_scale_free(self):
        assert energy(EnergyKind.MULTIPLICATIVE, make_set(["1/2", 1, 2])) == 19

    def test_multiplicative_rejects_zero(self):
        with pytest.raises(ZeroInMultiplicativeEnergy):
            energy(EnergyKind.MULTIPLICATIVE, make_set([0, 1]))

    @pytest.mark.parametrize("kind", list(EnergyKind))
    def test_agrees_with_oracle(self, kind, random_set):
        for _ in range(10):
            A = random_set(10, 40)
            B = random_set(7, 40)
            assert energy(kind, A, B) == brute_energy(kind, A, B)

    def test_python_path(self, budget, random_set):
        A = random_set(20, 100)
        assert energy(EnergyKind.ADDITIVE, A, budget=budget(int_fast_path_max_magnitude=0)) == \
            brute_energy(EnergyKind.ADDITIVE, A)

    def test_bounds_report_interval(self):
        report = energy_bounds_report(make_set([1, 2, 3]))
        assert report.e_plus == 19
        assert report.sum_bound == Fraction(81, 5)
        assert report.additive_constant == Fraction(27, 19)
        assert report.lower_bounds_hold and report.upper_bounds_hold

    def test_bounds_report_singleton_is_tight(self):
        report = energy_bounds_report(make_set([3]))
        assert report.e_plus == 1 and report.sum_bound == 1
        assert report.lower_bounds_hold

    def test_bounds_report_geometric(self):
        report = energy_bounds_report(make_set([1, 2, 4]))
        assert report.e_mult == 19
        assert report.product_bound == Fraction(81, 5)
        assert report.ratio_bound == Fraction(81, 5)
        assert report.lower_bounds_hold

    def test_bounds_hold_on_random_sets(self, random_set):
        for _ in range(10):
            report = energy_bounds_report(random_set(12, 80), random_set(9, 80))
            assert report.lower_bounds_hold and report.upper_bounds_hold

    def test_bounds_report_with_zero_keeps_the_additive_half(self):
        report = energy_bounds_report(make_set([0, 1, 2]))
        assert report.e_plus == 19 and report.sum_bound == Fraction(81, 5)
        assert report.e_mult is None and report.product_bound is None and report.ratio_bound is None
        assert report.lower_bounds_hold and report.upper_bounds_hold
        lines = report.to_text().splitlines()
        assert "e_plus=19" in lines and "e_mult=" in lines and "bound_ratio=" in lines


@pytest.mark.slow
class TestAcceptanceScale:

    def test_oracles_on_random_triples(self, rng):
        def rational_set():
            return make_set([Fraction(rng.randint(-100, 100), rng.randint(1, 100)) for _ in range(rng.randint(1, 64))])

        for _ in range(1000):
            A, B, C = rational_set(), rational_set(), rational_set()
            for op in BinaryOp:
                if op is BinaryOp.RATIO and 0 in B:
                    continue
                assert set(binary_op(op, A, B)) == brute_binary_op(op, A, B)
            assert set(combine(A, B, C).elements) == brute_combine(A, B, C)
            assert energy(EnergyKind.ADDITIVE, A, B) == brute_energy(EnergyKind.ADDITIVE, A, B)
            if 0 not in A and 0 not in B:
                assert energy(EnergyKind.MULTIPLICATIVE, A, B) == brute_energy(EnergyKind.MULTIPLICATIVE, A, B)

    def test_max_dilate_identity_on_random_sets(self, rng, random_set):
        for _ in range(200):
            size = rng.randint(1, 512)
            assert max_dilate_identity(random_set(size, 4 * size)) == (size * size, True)

    def test_energy_bounds_on_random_sets(self, rng, random_set):
        for _ in range(500):
            report = energy_bounds_report(random_set(rng.randint(1, 128), 1000), random_set(rng.randint(1, 128), 1000))
            assert report.lower_bounds_hold and report.upper_bounds_hold

    def test_ruzsa_on_random_triples(self, rng):
        for _ in range(500):
            sets = [make_set(rng.sample(range(-500, 500), rng.randint(1, 64))) for _ in range(3)]
            assert ruzsa_ratio(*sets) >= 1
