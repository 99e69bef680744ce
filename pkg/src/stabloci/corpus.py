"""Built-in action corpus, regenerable bit-for-bit from the CLI.

Each entry is a complete action document with a point panel chosen to
cover the interesting support and root configurations for that action.
Binary-form coordinates: coordinate j is the coefficient of
s^(n-j) t^j, so trailing zeros are roots at the distinguished fixed
point [1:0].
"""

from __future__ import annotations

from .actions import (
    ActionDocument,
    ProjectivePoint,
    TorusWeights,
    WeightedAction,
    aut_p112_example,
    jet_group_example,
    jordan_embed_ga,
    serialize_document,
)


def _points(*named) -> tuple[tuple[str, ProjectivePoint], ...]:
    return tuple((name, ProjectivePoint(coords)) for name, coords in named)


def _torus_line_doc() -> ActionDocument:
    action = WeightedAction(
        torus=TorusWeights(rank=1, weights=((-1,), (0,), (2,))),
        label="torus_line",
    )
    return ActionDocument(
        action=action,
        points=_points(
            ("ones", (1, 1, 1)),
            ("middle", (0, 1, 0)),
            ("low", (1, 0, 0)),
            ("high", (0, 0, 1)),
            ("ends", (1, 0, 1)),
            ("low_pair", (1, 1, 0)),
        ),
    )


def _torus_rank2_doc() -> ActionDocument:
    action = WeightedAction(
        torus=TorusWeights(rank=2, weights=((1, 0), (0, 1), (-1, -1), (1, 1))),
        label="torus_rank2",
    )
    return ActionDocument(
        action=action,
        points=_points(
            ("ones", (1, 1, 1, 1)),
            ("axis", (1, 0, 0, 0)),
            ("plane", (1, 1, 0, 0)),
            ("balanced", (1, 1, 1, 0)),
            ("spike", (0, 0, 0, 1)),
        ),
    )


def _jordan1_doc() -> ActionDocument:
    return ActionDocument(
        action=jordan_embed_ga([1]),
        points=_points(("fixed", (1, 0)), ("free", (0, 1)), ("generic", (1, 1))),
    )


def _jordan3_doc() -> ActionDocument:
    return ActionDocument(
        action=jordan_embed_ga([3]),
        points=_points(
            ("distinct_finite", (0, -1, 0, 1)),
            ("generic", (1, 1, 1, 1)),
            ("triple_free", (0, 0, 0, 1)),
            ("double_finite", (0, 0, 1, 1)),
            ("one_at_infinity", (0, 1, 1, 0)),
            ("double_at_infinity", (1, 1, 0, 0)),
            ("triple_at_infinity", (1, 0, 0, 0)),
        ),
    )


def _jordan11_doc() -> ActionDocument:
    return ActionDocument(
        action=jordan_embed_ga([1, 1]),
        points=_points(
            ("generic", (1, 1, 1, 1)),
            ("fixed_pair", (1, 0, 1, 0)),
            ("free_pair", (0, 1, 0, 1)),
            ("mixed", (1, 1, 0, 1)),
        ),
    )


def _aut_p112_doc() -> ActionDocument:
    return ActionDocument(
        action=aut_p112_example(),
        points=_points(
            ("vertex", (0, 0, 0, 1)),
            ("generic", (1, 1, 1, 1)),
            ("quadric_only", (1, 2, 1, 0)),
        ),
    )


def _jet_doc(k: int) -> ActionDocument:
    n = k - 1
    generic = tuple(1 for _ in range(n + 1))
    lowest = tuple(1 if i == 0 else 0 for i in range(n + 1))
    highest = tuple(1 if i == n else 0 for i in range(n + 1))
    return ActionDocument(
        action=jet_group_example(k),
        points=_points(("generic", generic), ("lowest", lowest), ("highest", highest)),
    )


def builtin_documents() -> list[tuple[str, ActionDocument]]:
    """Stable (filename, document) pairs; order and content are pinned."""
    return [
        ("torus_line.json", _torus_line_doc()),
        ("torus_rank2.json", _torus_rank2_doc()),
        ("jordan_1.json", _jordan1_doc()),
        ("jordan_3.json", _jordan3_doc()),
        ("jordan_1_1.json", _jordan11_doc()),
        ("aut_p112.json", _aut_p112_doc()),
        ("jet_2.json", _jet_doc(2)),
        ("jet_3.json", _jet_doc(3)),
    ]


def render_corpus() -> list[tuple[str, str]]:
    return [(name, serialize_document(doc)) for name, doc in builtin_documents()]
