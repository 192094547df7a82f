import random

import pytest

from weyrkit import (
    CharacteristicTooSmall,
    ExactMatrix,
    FieldSpec,
    InvalidK,
    Partition,
    build_basic_weyr,
    compose,
    mat_pow,
    predicted_rank,
    predicted_structure,
    sierpinski,
    sierpinski_structure,
    verify_compose,
    weyr_structure_at,
)


def random_shape(rng, max_parts=5, max_part=4):
    count = rng.randint(1, max_parts)
    return Partition(sorted((rng.randint(1, max_part) for _ in range(count)), reverse=True))


def test_compose_degenerate_and_recursion():
    b = ExactMatrix([[1, 2], [3, 4]])
    assert compose(b, 1) == b
    assert compose(ExactMatrix([[1]]), 2) == ExactMatrix([[1, 1], [0, 1]])
    assert compose(sierpinski(2), 2) == sierpinski(3)


def test_sierpinski_small():
    assert sierpinski(0) == ExactMatrix([[1]])
    assert sierpinski(1) == ExactMatrix([[1, 1], [0, 1]])
    assert sierpinski(2) == ExactMatrix(
        [[1, 1, 1, 1], [0, 1, 0, 1], [0, 0, 1, 1], [0, 0, 0, 1]]
    )


def test_sierpinski_structure_values():
    assert sierpinski_structure(0) == (1,)
    assert sierpinski_structure(4) == (6, 4, 4, 1, 1)
    assert sierpinski_structure(6) == (20, 15, 15, 6, 6, 1, 1)


def test_predicted_structure_examples():
    assert predicted_structure((3, 3, 1, 1), 2, False) == (6, 4, 4, 1, 1)
    assert predicted_structure((5,), 2, False) == (5, 5)
    assert predicted_structure((2, 1), 2, True) == (4, 2)
    assert predicted_structure((1,), 4, False) == (1, 1, 1, 1)


def test_predicted_rank_examples():
    assert predicted_rank((3, 2, 1, 1), 2, 2, False) == 5
    assert predicted_rank((2, 1), 2, 1, True) == 2
    assert predicted_rank((1,), 3, 2, False) == 1
    with pytest.raises(InvalidK):
        predicted_rank((1,), 2, -1, False)


def test_predicted_rank_at_low_powers():
    # below k = t-1 the value comes from structure partial sums and must
    # still chain consistently with the sum formula above it
    rng = random.Random(4040)
    for _ in range(30):
        m = random_shape(rng)
        t = rng.randint(1, 6)
        structure = predicted_structure(m, t, False)
        total = t * m.total
        for k in range(len(structure) + 1):
            expected = total - sum(structure.parts[:k])
            assert predicted_rank(m, t, k, False) == expected


def closed_form_t2(m):
    r = len(m)
    if r == 1:
        return [m[0], m[0]]
    s = r + 1
    get = lambda i: m[i - 1] if 1 <= i <= r else 0
    out = [get(1) + get(2)]
    for i in range(2, s - 1):
        out.append(get(i - 1) + get(i + 1))
    out.append(get(s - 2))
    out.append(get(s - 1))
    return out


def closed_form_t3(m):
    r = len(m)
    s = r + 2
    get = lambda i: m[i - 1] if 1 <= i <= r else 0
    out = [get(1) + get(2) + get(3), get(1) + get(2) + get(4)]
    for i in range(3, s - 2):
        out.append(get(i - 2) + get(i) + get(i + 2))
    out.extend([get(s - 4) + get(s - 2), get(s - 3), get(s - 2)])
    return out


def closed_form_t4(m):
    r = len(m)
    s = r + 3
    get = lambda i: m[i - 1] if 1 <= i <= r else 0
    out = [
        get(1) + get(2) + get(3) + get(4),
        get(1) + get(2) + get(3) + get(5),
        get(1) + get(2) + get(4) + get(6),
    ]
    for i in range(4, s - 3):
        out.append(get(i - 3) + get(i - 1) + get(i + 1) + get(i + 3))
    out.extend(
        [
            get(s - 6) + get(s - 4),
            get(s - 5) + get(s - 3),
            get(s - 4),
            get(s - 3),
        ]
    )
    return out


@pytest.mark.parametrize(
    "t,closed,min_parts",
    [(2, closed_form_t2, 3), (3, closed_form_t3, 4), (4, closed_form_t4, 5)],
)
def test_general_rule_matches_closed_forms(t, closed, min_parts):
    rng = random.Random(1000 + t)
    for _ in range(40):
        count = rng.randint(min_parts, min_parts + 3)
        m = Partition(sorted((rng.randint(1, 5) for _ in range(count)), reverse=True))
        assert predicted_structure(m, t, False) == tuple(closed(m))
    # the single-part degenerate case for t = 2
    if t == 2:
        assert predicted_structure((4,), 2, False) == tuple(closed_form_t2(Partition([4])))


def test_rank_identity_t3():
    # rank of the k-th power of the shifted composition splits into power
    # ranks of the nilpotent part at offsets -2, 0, +2 around k
    rng = random.Random(33)
    for _ in range(10):
        m = random_shape(rng, max_parts=4, max_part=3)
        b = build_basic_weyr(1, m)
        x = compose(b, 3).shift_diagonal(-1)
        w = b.shift_diagonal(-1)

        def w_rank(e):
            if e <= 0:
                return m.total
            return mat_pow(w, e).rank()

        s = len(m) + 2
        for k in range(2, s):
            assert mat_pow(x, k).rank() == w_rank(k - 2) + w_rank(k) + w_rank(k + 2)
        assert mat_pow(x, 1).rank() == 2 * m.total + w_rank(3)


def test_verify_compose_identity_case():
    report = verify_compose(ExactMatrix.identity(5), 2, 1)
    assert report.agree
    assert report.predicted == (5, 5)
    assert report.computed == (5, 5)


def test_verify_compose_oracle_case_t3():
    # frozen from the exact rank ladder of the 21x21 composition
    report = verify_compose(build_basic_weyr(1, (3, 2, 1, 1)), 3, 1)
    assert report.agree
    assert report.computed == (6, 6, 4, 3, 1, 1)
    assert report.rank_ladder_computed == (21, 15, 9, 5, 2, 1, 0)


def test_verify_compose_zero_eigenvalue_scaling():
    report = verify_compose(build_basic_weyr(0, (3, 2)), 4, 0)
    assert report.agree
    assert report.predicted == (12, 8)
    assert report.computed == (12, 8)


def test_verify_compose_mixed_spectrum():
    # eigenvalues 1 and 2; the ladder floors at the other eigenspace's
    # dimension (times t) instead of zero, per eigenvalue
    b = ExactMatrix([[1, 0, 0], [0, 2, 1], [0, 0, 2]])
    for lam in (1, 2):
        report = verify_compose(b, 2, lam)
        assert report.agree, report.to_dict()
    assert verify_compose(b, 2, 1).predicted == (1, 1)
    assert verify_compose(b, 2, 2).predicted == (2, 1, 1)
    assert verify_compose(b, 3, 2).rank_ladder_computed[-1] == 3


def test_verify_compose_eigenvalue_independence():
    rng = random.Random(777)
    for _ in range(8):
        m = random_shape(rng, max_parts=4, max_part=3)
        t = rng.randint(2, 4)
        r1 = verify_compose(build_basic_weyr(1, m), t, 1)
        r2 = verify_compose(build_basic_weyr(2, m), t, 2)
        assert r1.agree and r2.agree
        assert r1.predicted == r2.predicted
        assert r1.computed == r2.computed
        assert r1.rank_ladder_computed == r2.rank_ladder_computed


def test_structure_length_relation():
    rng = random.Random(888)
    for _ in range(20):
        m = random_shape(rng)
        t = rng.randint(1, 6)
        assert len(predicted_structure(m, t, False)) == len(m) + t - 1
        assert len(predicted_structure(m, t, True)) == len(m)


def test_sum_preservation():
    rng = random.Random(999)
    for _ in range(20):
        m = random_shape(rng)
        t = rng.randint(1, 6)
        for zero in (False, True):
            assert predicted_structure(m, t, zero).total == t * m.total


def test_verify_compose_random_sweep():
    rng = random.Random(123456)
    for _ in range(25):
        m = random_shape(rng, max_parts=4, max_part=3)
        t = rng.randint(1, 6)
        lam = rng.choice([0, 1, 2])
        report = verify_compose(build_basic_weyr(lam, m), t, lam)
        assert report.agree, (m, t, lam)


def test_doubling_structure_recursion():
    for n in range(8):
        assert sierpinski_structure(n + 1) == predicted_structure(
            sierpinski_structure(n), 2, False
        )


def test_doubling_matrices_match_binomials_small():
    for n in range(6):
        assert weyr_structure_at(sierpinski(n), 1).structure == sierpinski_structure(n)


def test_characteristic_guard_enforced():
    field = FieldSpec.prime(3)
    b = build_basic_weyr(field.scalar(1), (2, 1))
    with pytest.raises(CharacteristicTooSmall):
        verify_compose(b, 2, 1)  # needs p > 6


def test_characteristic_guard_recording():
    field = FieldSpec.prime(2)
    b = build_basic_weyr(field.scalar(1), (1, 1))
    report = verify_compose(b, 2, 1, enforce_guard=False)
    assert not report.guard_ok
    assert not report.agree  # the binomial coefficient 2 vanishes mod 2
    # under a big enough characteristic the same case agrees
    field11 = FieldSpec.prime(11)
    report11 = verify_compose(build_basic_weyr(field11.scalar(1), (1, 1)), 2, 1)
    assert report11.guard_ok and report11.agree


def test_report_serialization():
    report = verify_compose(ExactMatrix.identity(2), 2, 1)
    d = report.to_dict()
    assert d["t"] == 2
    assert d["eigenvalue"] == "1"
    assert d["predicted"] == [2, 2]
    assert d["agree"] is True
    assert d["guard_ok"] is True
