"""Code-core tests.

The GF(25) reference instance (modulus X^2 - X + 2, arc of eps-powers
3,4,8,15,16,20, S = GF(5)) provides frozen oracles: its generator row
space, weight counts and intersection counts are pinned here.  Structural
claims (injectivity, MDS, closure homomorphisms) are verified by
exhaustion on small q.
"""

import pytest

from hermitian_mds import code as cc
from hermitian_mds.linalg import MatrixFq


@pytest.fixture(scope="module")
def ref():
    return cc.reference_instance()


@pytest.fixture(scope="module")
def specs():
    return {q: cc.construct_code(q) for q in (3, 4, 5, 7, 8, 9)}


def test_reference_instance_shape(ref):
    assert ref.tower.q == 5
    assert ref.N == 6
    assert ref.lam == cc.REFERENCE_Q5_LAMBDA
    assert ref.s == [0, 1, 2, 3, 4]
    assert ref.s0 == 0
    assert cc.is_reference_instance(ref)
    assert not cc.is_reference_instance(cc.construct_code(5))


def test_form_eval_trivial(ref):
    for lam in ref.tower.elements():
        assert cc.form_eval(ref, lam, 0, 0) == 0
    # norm(0) = 0, trace(3) = 6 = 1, so every coordinate is 1
    for lam in ref.tower.elements():
        assert cc.form_eval(ref, lam, 0, 3) == 1


def test_form_eval_literal_agreement_exhaustive_q4():
    # the assert inside form_eval compares against the five-term polynomial;
    # drive it over every (lam, x, y) triple
    spec = cc.construct_code(4)
    F = spec.tower
    for lam in F.elements():
        for x in F.elements():
            for y in F.elements():
                cc.form_eval(spec, lam, x, y)


def test_encode_reference_values(ref):
    assert cc.encode(ref, (0, 0)) == (0,) * 6
    assert cc.encode(ref, (0, 3)) == (1,) * 6


def test_encode_rejects_bad_messages(ref):
    with pytest.raises(ValueError):
        cc.encode(ref, (0, 5))  # y outside S
    with pytest.raises(ValueError):
        cc.encode(ref, (25, 0))  # x outside GF(25)


def test_codeword_counts(specs):
    for q, expected in [(3, 27), (4, 64), (5, 125)]:
        words = cc.enumerate_codewords(specs[q])
        assert len(words) == expected
        assert len(set(words)) == expected


def test_encode_injective(specs, ref):
    for spec in (specs[4], specs[7], ref):
        words = cc.enumerate_codewords(spec)
        assert len(set(words)) == spec.tower.q ** 3


def test_enumeration_budget(monkeypatch):
    monkeypatch.setattr(cc, "ENUMERATION_BUDGET", 100)
    spec = cc.construct_code(5)
    with pytest.raises(ValueError):
        cc.enumerate_codewords(spec)


def test_generator_matrix_reference_row_space(ref):
    G = cc.generator_matrix(ref)
    R = MatrixFq(ref.tower, cc.REFERENCE_Q5_G_ROWS).rref()[0]
    assert G == R  # identical canonical rref = identical row spaces


def test_generator_matrix_rank_and_span(specs):
    for q, spec in specs.items():
        G = cc.generator_matrix(spec)
        assert G.nrows == 3 and G.ncols == spec.N
        assert G.rank() == 3
    # every codeword is a row combination (q=4)
    spec = specs[4]
    G = cc.generator_matrix(spec)
    Gt = MatrixFq(spec.tower, [list(col) for col in zip(*G.rows)])
    for w in cc.enumerate_codewords(spec):
        assert Gt.solve(list(w)) is not None


def test_min_distance(specs, ref):
    assert cc.min_distance(ref) == 4
    assert cc.min_distance(specs[3]) == 2  # N=4
    assert cc.min_distance(specs[7]) == 6  # N=8


def test_mds_all_instances(specs, ref):
    assert cc.is_mds(ref)
    for q, spec in specs.items():
        assert cc.is_mds(spec)
        assert cc.min_distance(spec) == spec.N - 2  # Singleton met with k=3


def test_zero_pattern_structure(specs):
    # no nonzero codeword has 3 zero symbols; some has exactly 2
    for q in (4, 5):
        spec = specs[q]
        zero_counts = [
            sum(1 for c in w if c == 0)
            for w in cc.enumerate_codewords(spec) if any(w)
        ]
        assert max(zero_counts) == 2


def test_weight_distribution_reference(ref):
    we = cc.weight_distribution(ref, "enumerate")
    wf = cc.weight_distribution(ref, "formula")
    assert we == wf
    assert we[0] == 1 and we[4] == 60 and we[5] == 24 and we[6] == 40
    assert all(we[i] == 0 for i in (1, 2, 3))
    assert sum(we.values()) == 125
    for i, a_i in cc.REFERENCE_Q5_WEIGHTS.items():
        assert we[i] == a_i


def test_weight_distribution_methods_agree(specs):
    for q in (3, 4, 5, 7):
        spec = specs[q]
        we = cc.weight_distribution(spec, "enumerate")
        wf = cc.weight_distribution(spec, "formula")
        assert we == wf
        assert sum(we.values()) == q ** 3
        assert we[0] == 1
        assert all(we[i] == 0 for i in range(1, spec.N - 2))
    with pytest.raises(ValueError):
        cc.weight_distribution(spec, "exact")


def test_expanded_closed_forms(specs, ref):
    # the first two expanded forms match enumeration; the last exceeds the
    # true count by exactly 1 on every tested instance
    for spec in [ref, specs[3], specs[4], specs[5], specs[7]]:
        we = cc.weight_distribution(spec, "enumerate")
        a_nm2, a_nm1, a_n = cc.expanded_closed_forms(spec)
        assert a_nm2 == we[spec.N - 2]
        assert a_nm1 == we[spec.N - 1]
        assert a_n == we[spec.N] + 1
    assert cc.expanded_closed_forms(ref) == (60, 24, 41)


def test_msg_add_identity_and_scale_identity(ref):
    zero = (0, ref.s0)
    for m in cc.iter_messages(ref):
        assert cc.msg_add(ref, m, zero) == m
        assert cc.msg_scale(ref, 1, m) == m
        assert cc.msg_scale(ref, 0, m) == zero


def test_closure_homomorphisms_exhaustive():
    # encode(msg_add) = sum of codewords, encode(msg_scale) = scalar multiple
    for q in (4, 5):
        spec = cc.construct_code(q)
        F = spec.tower
        table = {m: cc.encode(spec, m) for m in cc.iter_messages(spec)}
        msgs = list(table)
        for m1 in msgs:
            w1 = table[m1]
            for m2 in msgs:
                w2 = table[m2]
                expect = tuple(F.q_add(a, b) for a, b in zip(w1, w2))
                assert table[cc.msg_add(spec, m1, m2)] == expect
            for kappa in range(F.q):
                expect = tuple(F.q_mul(kappa, a) for a in w1)
                assert table[cc.msg_scale(spec, kappa, m1)] == expect


def test_msg_scale_rejects_bad_scalar(ref):
    with pytest.raises(ValueError):
        cc.msg_scale(ref, 5, (0, 0))  # 5 is not in GF(5)'s range


def test_pairwise_intersection_counts(ref, specs):
    for i, a in enumerate(ref.lam):
        for b in ref.lam[i + 1:]:
            assert cc.pairwise_intersection_count(ref, a, b) == 5
    spec4 = specs[4]
    for i, a in enumerate(spec4.lam):
        for b in spec4.lam[i + 1:]:
            assert cc.pairwise_intersection_count(spec4, a, b) == 4
    with pytest.raises(ValueError):
        cc.pairwise_intersection_count(ref, ref.lam[0], ref.lam[0])
    with pytest.raises(ValueError):
        cc.pairwise_intersection_count(ref, ref.lam[0], 999 % 25)


def test_common_zero_set(ref, specs):
    assert cc.common_zero_set(ref) == {(0, 0)}
    for q in (4, 7):
        spec = specs[q]
        assert cc.common_zero_set(spec) == {(0, spec.s0)}


def test_to_text_frozen(ref):
    assert cc.to_text(ref) == (
        "hermitian-mds v1\n"
        "p=5\n"
        "h=1\n"
        "gq2=2,4,1\n"
        "lambda=23,12,11,7,18,19\n"
        "s=0,1,2,3,4\n"
    )


def test_text_roundtrip_byte_exact(ref, specs):
    for spec in [ref, specs[4], specs[8], specs[9]]:
        text = cc.to_text(spec)
        parsed = cc.from_text(text)
        assert parsed == spec
        assert cc.to_text(parsed) == text


def test_from_text_comments_and_blanks(ref):
    text = (
        "# instance file\n"
        "hermitian-mds v1\n"
        "\n"
        "p=5  # prime\n"
        "h=1\n"
        "gq2=2,4,1\n"
        "lambda=23,12,11,7,18,19\n"
        "s=0,1,2,3,4\n"
    )
    assert cc.from_text(text) == ref


def test_from_text_rejects():
    base = {
        "p": "5", "h": "1", "gq2": "2,4,1",
        "lambda": "23,12,11,7,18,19", "s": "0,1,2,3,4",
    }

    def render(header="hermitian-mds v1", **overrides):
        fields = dict(base)
        fields.update(overrides)
        lines = [header]
        for k, v in fields.items():
            if v is not None:
                lines.append(f"{k}={v}")
        return "\n".join(lines) + "\n"

    cases = [
        render(header="hermitian-mds v2"),       # bad header
        render(p=None),                          # missing key
        render(extra="1"),                       # unknown key
        render(gq="1,1"),                        # gq with h=1
        render(s="0,1,2,3,x"),                   # non-integer
        render(s="0,1,2,3"),                     # bad transversal size
        render(**{"lambda": "0,1,2"}),           # not an arc
        "hermitian-mds v1\np=5\nh\n",            # malformed line
        "p=5\n",                                 # no header at all
        render() + "p=5\n",                      # duplicate key
    ]
    for text in cases:
        with pytest.raises(ValueError):
            cc.from_text(text)


def test_from_text_extension_field():
    spec = cc.construct_code(4)
    text = cc.to_text(spec)
    assert "gq=1,1,1\n" in text
    assert cc.from_text(text) == spec
    with pytest.raises(ValueError):
        cc.from_text(text.replace("gq=1,1,1\n", ""))  # gq required when h>1


def test_construct_code_defaults(specs):
    assert specs[5].N == 6 and specs[5].s == [0, 1, 2, 3, 4]
    assert specs[4].N == 6  # greedy reaches q+2
    assert specs[9].N == 10
    assert specs[8].N == 10
    explicit = cc.construct_code(5, arc_strategy="explicit",
                                 arc_values=[1, 4, 11, 12, 18, 19])
    assert explicit.lam == [1, 4, 11, 12, 18, 19]
    custom = cc.construct_code(5, gq2=[2, 4, 1], arc_strategy="explicit",
                               arc_values=cc.REFERENCE_Q5_LAMBDA)
    assert cc.is_reference_instance(custom)
