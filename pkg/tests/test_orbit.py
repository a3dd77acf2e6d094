import random
from fractions import Fraction

import pytest

from helpers import random_spectrum, random_vector
from lgorbit.errors import EmptyLocus, NotInOrbit, SpectrumError
from lgorbit.multipoly import MultiPoly
from lgorbit.orbit import (
    INDETERMINATE,
    BiPoint,
    Spectrum,
    build_forms,
    classify_pair,
    critical_points,
    embed_point,
    evaluate_pencil,
    jacobian_matrix,
    minimal_orbit_charpoly,
    rank_one_locus_certificate,
    sample_and_rank,
    sample_locus_points,
)


def test_build_forms_smallest_case():
    forms = build_forms(Spectrum.from_values([1, -1]))
    assert forms.weighted == MultiPoly(
        4, {(1, 0, 1, 0): Fraction(1), (0, 1, 0, 1): Fraction(-1)}
    )
    assert forms.incidence == MultiPoly(
        4, {(1, 0, 1, 0): Fraction(1), (0, 1, 0, 1): Fraction(1)}
    )


def test_build_forms_weighted_coefficients():
    forms = build_forms(Spectrum.from_values([1, 2, -3]))
    assert forms.weighted == MultiPoly(
        6,
        {
            (1, 0, 0, 1, 0, 0): Fraction(1),
            (0, 1, 0, 0, 1, 0): Fraction(2),
            (0, 0, 1, 0, 0, 1): Fraction(-3),
        },
    )


def test_spectrum_rejects_repeats_with_indices():
    with pytest.raises(SpectrumError, match="0 and 1"):
        Spectrum.from_values([1, 1, -2])


def test_spectrum_rejects_nonzero_trace():
    with pytest.raises(SpectrumError, match="sum"):
        Spectrum.from_values([1, 2, 3])


def test_pencil_value_at_coordinate_pair():
    spectrum = Spectrum.from_values([1, 2, -3])
    forms = build_forms(spectrum)
    value = evaluate_pencil(forms, BiPoint.coordinate_pair(0, 2))
    assert value == (Fraction(1), Fraction(1))


def test_pencil_indeterminate_on_disjoint_supports():
    spectrum = Spectrum.from_values([1, 2, -3])
    forms = build_forms(spectrum)
    point = BiPoint((1, 0, 0), (0, 1, 0))
    assert evaluate_pencil(forms, point) is INDETERMINATE


def test_pencil_infinite_value_on_flag_point():
    spectrum = Spectrum.from_values([1, 2, -3])
    forms = build_forms(spectrum)
    point = BiPoint((1, 1, 0), (1, -1, 0))  # plain form 0, weighted form -1
    assert evaluate_pencil(forms, point) == (Fraction(1), Fraction(0))


def test_pencil_scale_invariance():
    spectrum = Spectrum.from_values([1, 2, -3])
    forms = build_forms(spectrum)
    a = BiPoint((1, 2, 3), (5, 1, 1))
    b = BiPoint((7, 14, 21), (Fraction(5, 3), Fraction(1, 3), Fraction(1, 3)))
    assert a == b
    assert evaluate_pencil(forms, a) == evaluate_pencil(forms, b)


def test_critical_points_n2():
    spectrum = Spectrum.from_values([1, 2, -3])
    expected = {
        BiPoint.coordinate_pair(i, 2): value
        for i, value in zip(range(3), (Fraction(1), Fraction(2), Fraction(-3)))
    }
    assert dict(critical_points(spectrum)) == expected


def test_critical_points_n1():
    points = critical_points(Spectrum.from_values([1, -1]))
    assert len(points) == 2
    assert {v for _, v in points} == {Fraction(1), Fraction(-1)}


def test_critical_point_count_and_distinct_values():
    rng = random.Random(2024)
    for n in range(1, 6):
        spectrum = random_spectrum(rng, n)
        points = critical_points(spectrum)
        assert len(points) == n + 1
        values = [v for _, v in points]
        assert len(set(values)) == n + 1


def test_rank_one_certificate_disjoint_from_base_locus():
    for n in range(1, 5):
        spectrum = Spectrum.from_values(list(range(1, n + 1)) + [Fraction(-n * (n + 1), 2)])
        cert = rank_one_locus_certificate(spectrum)
        assert cert["verified"]
        assert cert["disjoint_from_base_locus"]
        assert len(cert["rank_le_one_points"]) == n + 1


def test_flag_samples_have_rank_two():
    spectrum = Spectrum.from_values([1, 2, -3])
    for _, rank in sample_and_rank(spectrum, "flag", seed=5, count=30):
        assert rank == 2


def test_base_samples_have_rank_two():
    spectrum = Spectrum.from_values([1, 2, -3])
    forms = build_forms(spectrum)
    for point, rank in sample_and_rank(spectrum, "base", seed=5, count=30):
        assert rank == 2
        assert evaluate_pencil(forms, point) is INDETERMINATE


def test_base_locus_empty_for_n1():
    with pytest.raises(EmptyLocus):
        sample_locus_points(Spectrum.from_values([1, -1]), "base")


def test_generic_samples_rank_two():
    spectrum = Spectrum.from_values([1, 2, -3])
    ranks = [rank for _, rank in sample_and_rank(spectrum, "generic", seed=13, count=25)]
    assert all(r == 2 for r in ranks)


def test_unknown_locus_rejected():
    with pytest.raises(ValueError, match="locus"):
        sample_locus_points(Spectrum.from_values([1, 2, -3]), "everywhere")


def test_coordinate_pair_has_rank_one():
    spectrum = Spectrum.from_values([1, 2, -3])
    forms = build_forms(spectrum)
    assert jacobian_matrix(forms, BiPoint.coordinate_pair(0, 2)).rank() == 1


def test_sampling_is_deterministic():
    spectrum = Spectrum.from_values([1, 2, -3])
    first = sample_locus_points(spectrum, "base", seed=9, count=10)
    second = sample_locus_points(spectrum, "base", seed=9, count=10)
    assert first == second


def test_embed_coordinate_pair():
    spectrum = Spectrum.from_values([1, 2, -3])
    matrix, height = embed_point(spectrum, BiPoint.coordinate_pair(0, 2))
    assert matrix.to_json() == [["2", "0", "0"], ["0", "-1", "0"], ["0", "0", "-1"]]
    assert height == 3  # (n+1) * first weight


def test_embed_rejects_flag_points():
    spectrum = Spectrum.from_values([1, 2, -3])
    with pytest.raises(NotInOrbit):
        embed_point(spectrum, BiPoint((1, 1, 0), (1, -1, 0)))


def test_embedded_matrices_stay_on_orbit():
    rng = random.Random(77)
    for n in range(1, 5):
        spectrum = random_spectrum(rng, n)
        forms = build_forms(spectrum)
        hits = 0
        while hits < 5:
            point = BiPoint(random_vector(rng, n + 1), random_vector(rng, n + 1))
            value = evaluate_pencil(forms, point)
            if value is INDETERMINATE or value[1] == 0:
                continue
            matrix, height = embed_point(spectrum, point)
            assert matrix.charpoly() == minimal_orbit_charpoly(n)
            assert matrix.trace() == 0
            assert height == (n + 1) * value[0]
            hits += 1


def test_rescaled_spectrum_fixes_locus_scales_values():
    base = Spectrum.from_values([1, 2, -3])
    scaled = Spectrum.from_values([Fraction(5, 2), 5, Fraction(-15, 2)])  # times 5/2
    base_points = critical_points(base)
    scaled_points = critical_points(scaled)
    assert [p for p, _ in base_points] == [p for p, _ in scaled_points]
    for (_, v1), (_, v2) in zip(base_points, scaled_points):
        assert v2 == Fraction(5, 2) * v1


def test_classify_containment_is_closed_orbit():
    assert classify_pair([(1, 0, 0)], [(1, 0, 0), (0, 1, 0)]) == 1


def test_classify_transversal_is_open_orbit():
    assert classify_pair([(1, 0, 0)], [(0, 1, 0), (0, 0, 1)]) == 0


def test_classify_rejects_dependent_rows():
    with pytest.raises(ValueError, match="dependent"):
        classify_pair([(1, 0, 0), (2, 0, 0)], [(0, 1, 0)])


def test_classify_realizes_all_labels_k2_n3():
    rng = random.Random(21)
    seen = set()
    for _ in range(200):
        v = [random_vector(rng, 4) for _ in range(2)]
        w = [random_vector(rng, 4) for _ in range(2)]
        try:
            seen.add(classify_pair(v, w))
        except ValueError:
            continue
    # random pairs are almost always transversal; force the degenerate labels too
    seen.add(classify_pair([(1, 0, 0, 0), (0, 1, 0, 0)], [(1, 0, 0, 0), (0, 0, 1, 0)]))
    seen.add(classify_pair([(1, 0, 0, 0), (0, 1, 0, 0)], [(1, 0, 0, 0), (0, 1, 0, 0)]))
    assert seen == {0, 1, 2}
