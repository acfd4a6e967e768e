import itertools
from fractions import Fraction

import numpy as np
import pytest

from ifsfourier import (
    cylinder_weight,
    estimate_h,
    find_w_cycles,
    h_closed_form,
    k_point,
    mu_hat_detail,
    path_weight_with_tail,
    sample_paths,
    weight_from_digits,
)
from ifsfourier.pathspace import classification_radius


def test_cylinder_empty_word(cantor4, cantor4_weight):
    assert cylinder_weight(cantor4_weight, cantor4.l_view, [0.2], []) == 1.0


def test_cylinder_zero_fixed_path(cantor4, cantor4_weight):
    for n in (1, 5, 20):
        w = cylinder_weight(cantor4_weight, cantor4.l_view, [0.0], [0] * n)
        assert w == pytest.approx(1.0, abs=1e-14)


def test_cylinder_total_mass(cantor4, cantor4_weight):
    total = sum(
        cylinder_weight(cantor4_weight, cantor4.l_view, [0.3], word)
        for word in itertools.product(range(2), repeat=8)
    )
    assert total == pytest.approx(1.0, abs=1e-12)


def test_cylinder_cocycle_factorization(cantor4, cantor4_weight):
    view = cantor4.l_view
    rng = np.random.default_rng(4)
    for _ in range(20):
        x = rng.uniform(-0.3, 0.3)
        word = tuple(rng.integers(0, 2, 6))
        prefix, suffix = word[:3], word[3:]
        z = np.array([x])
        for idx in prefix:
            z = view.inv @ (z + view.digits[idx])
        lhs = cylinder_weight(cantor4_weight, view, [x], word)
        rhs = cylinder_weight(cantor4_weight, view, [x], prefix) * cylinder_weight(
            cantor4_weight, view, z, suffix
        )
        assert lhs == pytest.approx(rhs, abs=1e-13)


def test_path_weight_matches_mu_hat(cantor4, cantor4_weight, cantor4_w_cycles):
    # P_x(word then cycle forever) = |mu_hat(x + k(word))|^2
    rng = np.random.default_rng(7)
    cycle = cantor4_w_cycles[0]
    for _ in range(20):
        n = int(rng.integers(0, 7))
        word = tuple(int(v) for v in rng.integers(0, 2, n))
        x = Fraction(int(rng.integers(-900, 900)), 2700)
        lhs = path_weight_with_tail(cantor4_weight, cantor4.l_view, [float(x)], word, cycle)
        k = k_point(cantor4, cycle, word)
        rhs = abs(mu_hat_detail(cantor4, (x + k[0],), 1e-12).value) ** 2
        assert abs(lhs - rhs) < 1e-8


def test_sample_paths_deterministic(cantor4, cantor4_weight):
    a = sample_paths(cantor4_weight, cantor4.l_view, [0.3], 16, 200, seed=5)
    b = sample_paths(cantor4_weight, cantor4.l_view, [0.3], 16, 200, seed=5)
    assert np.array_equal(a.words, b.words)
    assert a.cylinder_frequency([0]) > 0.5


def test_sample_paths_zero_start_locks(cantor4, cantor4_weight):
    ens = sample_paths(cantor4_weight, cantor4.l_view, [0.0], 24, 500, seed=6)
    # W kills the other branch at the origin, so every word is all zeros
    assert ens.cylinder_frequency([0] * 24) == 1.0


def test_sample_paths_uniform_weight_is_bernoulli(cantor4):
    from ifsfourier import Weight

    w = Weight(lambda x: np.full(np.shape(x) or (1,), 0.5), "1/N")
    ens = sample_paths(w, cantor4.l_view, [0.1], 4, 20_000, seed=8)
    # chi-square over the 16 length-4 cylinders
    counts = np.zeros(16)
    words = ens.words @ (2 ** np.arange(4))
    for v in words:
        counts[v] += 1
    expected = len(words) / 16.0
    chi2 = float(np.sum((counts - expected) ** 2 / expected))
    assert chi2 < 37.7  # chi2_{15} at p=0.999


def test_sample_paths_cylinder_frequencies(cantor4, cantor4_weight):
    view = cantor4.l_view
    count = 40_000
    ens = sample_paths(cantor4_weight, view, [0.3], 8, count, seed=9)
    rng = np.random.default_rng(10)
    for _ in range(20):
        n = int(rng.integers(1, 6))
        word = tuple(int(v) for v in rng.integers(0, 2, n))
        emp = ens.cylinder_frequency(word)
        exact = cylinder_weight(cantor4_weight, view, [0.3], word)
        assert abs(emp - exact) < 4.0 / np.sqrt(count)


def test_sample_paths_rejects_unnormalized(cantor4):
    bad = weight_from_digits([[0], [1]])
    with pytest.raises(ValueError):
        sample_paths(bad, cantor4.l_view, [0.1], 4, 10, seed=0)


def test_estimate_h_at_cycle_point(cantor4, cantor4_weight, cantor4_w_cycles):
    est = estimate_h(
        cantor4_weight, cantor4.l_view, [0.0], cantor4_w_cycles, 32, 2000, seed=11
    )
    assert est.probabilities[0] == pytest.approx(1.0, abs=1e-3)


def test_estimate_h_single_cycle_total(cantor4, cantor4_weight, cantor4_w_cycles):
    est = estimate_h(
        cantor4_weight, cantor4.l_view, [0.29], cantor4_w_cycles, 64, 20_000, seed=12
    )
    assert est.probabilities[0] + est.unclassified == pytest.approx(1.0, abs=1e-12)
    assert est.probabilities[0] > 0.99


def test_estimate_h_probabilities_in_unit_interval(twindragon):
    w = weight_from_digits(twindragon.B)
    cycles = find_w_cycles(twindragon, 4)
    est = estimate_h(w, twindragon.l_view, [0.1, -0.2], cycles, 32, 5000, seed=13)
    assert all(0.0 <= p <= 1.0 for p in est.probabilities)
    assert est.total <= 1.0 + 1e-12


def test_classification_radius_multi_cycle(twindragon):
    cycles = find_w_cycles(twindragon, 4)
    # minimum pairwise distance among the twelve points is 1/5
    assert classification_radius(cycles, twindragon.l_view) == pytest.approx(1 / 40)


def test_h_closed_form_monotone_in_depth(cantor4, cantor4_w_cycles):
    vals = [
        h_closed_form(cantor4, [0.3], cantor4_w_cycles[0], depth)
        for depth in (2, 4, 8, 12)
    ]
    assert all(a <= b + 1e-15 for a, b in zip(vals, vals[1:]))
    assert vals[-1] == pytest.approx(1.0, abs=1e-6)


def test_h_closed_form_unit_at_matching_frequency(cantor4, cantor4_w_cycles):
    # x = -k(word): one term is |mu_hat(0)|^2 = 1
    k = k_point(cantor4, cantor4_w_cycles[0], (1, 0, 1))
    val = h_closed_form(cantor4, [-float(k[0])], cantor4_w_cycles[0], 6)
    assert val >= 1.0 - 1e-9
    assert val <= 1.0 + 1e-9


def test_estimate_h_deficient_partition_planar_shear(planar_shear):
    # the shear system's harmonic eigenspace is larger than its cycle
    # count, so path mass escapes the four W-cycles; at x = (1/3, 0) the
    # escape is total (the matching closed-form sums vanish exactly)
    w = weight_from_digits(planar_shear.B)
    cycles = find_w_cycles(planar_shear, 4)
    est = estimate_h(w, planar_shear.l_view, [1 / 3, 0], cycles, 64, 20_000, seed=31)
    assert est.total < 1.0 - 0.01
    assert est.unclassified > 0.9
    assert sum(h_closed_form(planar_shear, [1 / 3, 0], c, 5) for c in cycles) == 0.0


def test_h_closed_form_cross_check_mc(cantor4, cantor4_weight, cantor4_w_cycles):
    x = [0.3]
    mc = estimate_h(cantor4_weight, cantor4.l_view, x, cantor4_w_cycles, 64, 20_000, seed=14)
    cf = h_closed_form(cantor4, x, cantor4_w_cycles[0], 12)
    sigma = max(mc.stderrs[0], 1e-4)
    assert abs(mc.probabilities[0] - cf) < 3 * sigma + mc.unclassified
