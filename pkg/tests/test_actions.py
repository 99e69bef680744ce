"""Action model tests: constructors against independent symbolic oracles,
document round-trips, and rejection of malformed inputs."""

import json
from fractions import Fraction
from math import comb

import pytest

from stabloci.actions import (
    ActionDocument,
    ProjectivePoint,
    UnipotentData,
    WeightedAction,
    aut_p112_example,
    jet_group_example,
    jordan_embed_ga,
    parse_document,
    serialize_document,
)
from stabloci.corpus import builtin_documents
from stabloci.errors import (
    DimensionMismatch,
    GradingCommutationFailure,
    MalformedDocument,
    NonPositiveGradingWeight,
    NotNilpotent,
)
from stabloci.linalg import RatMatrix
from stabloci.poly import MultiPoly


def sym_power_matrix_oracle(k: int) -> RatMatrix:
    """Derivative at 0 of the symmetric-power action of 1 + a*e.

    Expands (for each basis monomial e1^(k-j) e2^j) the image under
    e1 -> e1, e2 -> a*e1 + e2 symbolically in (a, e1, e2) and extracts
    the linear-in-a matrix coefficient.
    """
    rows = [[Fraction(0)] * (k + 1) for _ in range(k + 1)]
    for j in range(k + 1):
        # (a e1 + e2)^j expanded: sum_i C(j,i) a^(j-i) e1^(j-i) e2^i
        image = MultiPoly.zero(3)  # variables a, e1, e2
        for i in range(j + 1):
            exp = (j - i, (k - j) + (j - i), i)
            image = image.add(MultiPoly.monomial(3, exp, comb(j, i)))
        for (a_deg, e1_deg, e2_deg), coeff in image.terms.items():
            if a_deg == 1:
                target = e2_deg  # v_target = e1^(k-target) e2^target
                rows[target][j] = coeff
    return RatMatrix(rows)


def test_jordan_single_block_matches_symbolic_oracle():
    for k in (1, 2, 3, 4):
        action = jordan_embed_ga([k])
        oracle = sym_power_matrix_oracle(k)
        assert action.unipotent.generators[0] == oracle
        assert [w[0] for w in action.torus.weights] == [k - 2 * j for j in range(k + 1)]


def test_jordan_cubics_is_the_spec_action():
    action = jordan_embed_ga([3])
    assert action.grading.gm_weights == (3, 1, -1, -3)
    assert action.unipotent.grading_weights == (2,)
    n = action.unipotent.generators[0]
    assert n.entry(0, 1) == 1 and n.entry(1, 2) == 2 and n.entry(2, 3) == 3


def test_jordan_defining_representation():
    action = jordan_embed_ga([1])
    assert action.grading.gm_weights == (1, -1)
    assert action.unipotent.generators[0] == RatMatrix([[0, 1], [0, 0]])


def test_jordan_two_blocks_block_diagonal():
    action = jordan_embed_ga([1, 1])
    assert action.grading.gm_weights == (1, -1, 1, -1)
    n = action.unipotent.generators[0]
    assert n.entry(0, 1) == 1 and n.entry(2, 3) == 1
    assert n.entry(0, 3) == 0 and n.entry(2, 1) == 0
    # commutation invariant is enforced at construction; rebuild to confirm
    WeightedAction(
        torus=action.torus, grading=action.grading, unipotent=action.unipotent
    )


def test_aut_p112_shape():
    action = aut_p112_example()
    assert action.unipotent.dim == 3
    assert all(w > 0 for w in action.unipotent.grading_weights)
    # constructing the action runs the commutation check for all generators
    assert action.grading.gm_weights == (2, 2, 2, 0)


def jet_composition_oracle(k: int, m: int) -> RatMatrix:
    """Linear-in-a part of jet composition with t + a t^(m+1).

    Acts on coefficient vectors: psi(t) = sum c_j t^j composed with the
    reparametrisation, expanded symbolically and truncated mod t^(k+1).
    """
    rows = [[Fraction(0)] * k for _ in range(k)]
    for j in range(1, k + 1):
        # (t + a t^(m+1))^j mod t^(k+1), coefficient linear in a: j t^(j+m)
        phi_j = MultiPoly.zero(2)  # variables a, t
        for i in range(j + 1):
            t_deg = j + i * m
            if t_deg <= k:
                phi_j = phi_j.add(MultiPoly.monomial(2, (i, t_deg), comb(j, i)))
        for (a_deg, t_deg), coeff in phi_j.terms.items():
            if a_deg == 1:
                rows[t_deg - 1][j - 1] = coeff
    return RatMatrix(rows)


@pytest.mark.parametrize("k", [2, 3, 4])
def test_jet_group_matches_composition_oracle(k):
    action = jet_group_example(k)
    assert action.grading.gm_weights == tuple(range(1, k + 1))
    assert action.unipotent.grading_weights == tuple(range(1, k))
    for m in range(1, k):
        assert action.unipotent.generators[m - 1] == jet_composition_oracle(k, m)


def test_jet_two_single_generator():
    action = jet_group_example(2)
    assert action.unipotent.dim == 1
    assert action.unipotent.grading_weights == (1,)
    assert action.grading.gm_weights == (1, 2)


def test_roundtrip_on_corpus():
    for name, doc in builtin_documents():
        text = serialize_document(doc)
        again = parse_document(text)
        assert serialize_document(again) == text, name
        assert again.action == doc.action
        assert again.points == doc.points
        assert again.bounds == doc.bounds


def test_parse_simple_torus_document():
    text = json.dumps(
        {
            "label": "demo",
            "n": 2,
            "torus": {"rank": 1, "weights": [[0], [1], [2]]},
        }
    )
    doc = parse_document(text)
    assert doc.action.torus.weights == ((0,), (1,), (2,))
    assert doc.action.grading is None and doc.action.unipotent is None


def test_parse_rejects_non_nilpotent():
    text = json.dumps(
        {
            "label": "bad",
            "n": 1,
            "torus": {"rank": 1, "weights": [[1], [-1]]},
            "grading": {"gm_weights": [1, -1], "chi": "0"},
            "unipotent": {"generators": [[["0", "1"], ["1", "0"]]], "adjoint_weights": [2]},
        }
    )
    with pytest.raises(NotNilpotent):
        parse_document(text)


def test_parse_rejects_dimension_mismatch():
    text = json.dumps(
        {
            "label": "bad",
            "n": 3,
            "torus": {"rank": 1, "weights": [[1], [-1]]},
        }
    )
    with pytest.raises(DimensionMismatch):
        parse_document(text)


def test_parse_rejects_bad_commutation():
    # diag weights (5, 0) give [D,N] = 5N, not 2N
    text = json.dumps(
        {
            "label": "bad",
            "n": 1,
            "torus": {"rank": 1, "weights": [[5], [0]]},
            "grading": {"gm_weights": [5, 0], "chi": "0"},
            "unipotent": {"generators": [[["0", "1"], ["0", "0"]]], "adjoint_weights": [2]},
        }
    )
    with pytest.raises(GradingCommutationFailure):
        parse_document(text)


def test_parse_rejects_nonpositive_adjoint_weight():
    with pytest.raises(NonPositiveGradingWeight):
        UnipotentData(
            generators=(RatMatrix([[0, 1], [0, 0]]),), grading_weights=(0,)
        )


def test_parse_rejects_garbage():
    with pytest.raises(MalformedDocument):
        parse_document("not json at all {")
    with pytest.raises(MalformedDocument):
        parse_document(json.dumps({"n": 1}))


def test_cubics_document_accepted():
    # the symmetric-cube generator with grading weights and adjoint weight 2
    action = jordan_embed_ga([3])
    doc = ActionDocument(action=action)
    again = parse_document(serialize_document(doc))
    assert again.action == action


def test_projective_point_scale_equality():
    a = ProjectivePoint((1, 2, 0))
    b = ProjectivePoint((Fraction(1, 2), 1, 0))
    assert a == b and hash(a) == hash(b)
    with pytest.raises(MalformedDocument):
        ProjectivePoint((0, 0))


def test_generators_verified_nilpotent_for_all_builtins():
    for _, doc in builtin_documents():
        u = doc.action.unipotent
        if u is None:
            continue
        for g in u.generators:
            assert g.is_nilpotent()
