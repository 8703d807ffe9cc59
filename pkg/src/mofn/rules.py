"""Syndrome complexes: networks read as M-of-N voting rules.

The final layer of a trained network is a set of N syndromes, each an
expression tree over encoded feature bits.  A case is classified by
counting syndromes: M1 vote for class 1, M0 = N - M1 for class 0, the
majority wins with M = max(M0, M1) supporting votes, and the decision
is written as a signed value, +M for class 0 and -M for class 1.  An
exact tie is a contradictory decision with value 0.

A complex round-trips through a plain text formula table.  The format
lists feature declarations and then one block per layer; each row
`i j k l` defines unit y_i = g_j(y_k, x_l), where y_k refers to a unit
of the previous layer (in layer 1, to a feature x_k).  Function ids
are catalog ids and are never renumbered.
"""

from __future__ import annotations

import shlex
from dataclasses import dataclass
from typing import Iterable, Mapping, Union

import numpy as np

from .encoding import Encoder
from .errors import EvaluationError, ModelFormatError
from .logic import function_ids, truth_row

__all__ = [
    "SignedDecision",
    "vote_decision",
    "describe_decision",
    "FeatureRef",
    "FnNode",
    "Expr",
    "SyndromeComplex",
    "Row",
    "extract",
    "evaluate",
    "syndrome_bits",
    "decision_levels",
    "to_formula_table",
    "parse_formula_table",
    "symbolic",
]


@dataclass(frozen=True)
class SignedDecision:
    """Outcome of one majority vote.

    value is +M for class 0, -M for class 1, 0 for a tie.  m is the
    winner's vote count max(m0, m1), n the number of syndromes, m1 the
    votes for class 1.
    """

    value: int
    m: int
    n: int
    m1: int

    @property
    def m0(self) -> int:
        return self.n - self.m1

    @property
    def klass(self) -> int | None:
        if self.value > 0:
            return 0
        if self.value < 0:
            return 1
        return None

    @property
    def contradictory(self) -> bool:
        return self.value == 0

    @property
    def confidence(self) -> float:
        return self.m / self.n


def vote_decision(m1: int, n: int) -> SignedDecision:
    """Build the signed decision for m1 of n syndromes voting class 1."""
    if not 0 <= m1 <= n or n < 1:
        raise EvaluationError(f"invalid vote count {m1} of {n}")
    m0 = n - m1
    if m0 > m1:
        return SignedDecision(value=m0, m=m0, n=n, m1=m1)
    if m1 > m0:
        return SignedDecision(value=-m1, m=m1, n=n, m1=m1)
    return SignedDecision(value=0, m=m0, n=n, m1=m1)


def describe_decision(d: SignedDecision, class_names: tuple[str, str] = ("0", "1")) -> str:
    if d.contradictory:
        return f"contradictory (0/{d.n})"
    return f"{class_names[d.klass]} ({d.value:+d}, {d.m}/{d.n})"


@dataclass(frozen=True)
class FeatureRef:
    """Leaf: the encoded bit of feature x_<feature>."""

    feature: int


@dataclass(frozen=True)
class FnNode:
    """Interior node: g_<fn> applied to two subexpressions."""

    fn: int
    left: "Expr"
    right: "Expr"


Expr = Union[FeatureRef, FnNode]


@dataclass(frozen=True)
class Row:
    """One formula table line: y_ident = g_fn(y_left, x_right)."""

    ident: int
    fn: int
    left: int
    right: int


@dataclass
class SyndromeComplex:
    """N syndromes over declared features, with their layered source rows."""

    syndromes: list[Expr]
    features: dict[int, Encoder]
    layers: list[list[Row]]
    class_names: tuple[str, str] = ("0", "1")
    extended: bool = False

    @property
    def n(self) -> int:
        return len(self.syndromes)

    def referenced_features(self) -> list[int]:
        seen: set[int] = set()
        for s in self.syndromes:
            _collect_features(s, seen)
        return sorted(seen)

    def feature_id(self, name: str) -> int:
        for ident, enc in self.features.items():
            if enc.feature == name:
                return ident
        raise EvaluationError(f"no declared feature named {name!r}")


def _collect_features(expr: Expr, out: set[int]) -> None:
    if isinstance(expr, FeatureRef):
        out.add(expr.feature)
    else:
        _collect_features(expr.left, out)
        _collect_features(expr.right, out)


def decision_levels(sc: SyndromeComplex) -> tuple[int, int]:
    """Range of decisive vote counts: floor(N/2)+1 up to N."""
    return sc.n // 2 + 1, sc.n


def extract(net) -> SyndromeComplex:
    """Unfold a trained network's final layer into expression trees.

    Unit ids are assigned per layer as 1..K in selection order; feature
    ids are the dataset column indices.  Declarations cover exactly the
    features the network references.
    """
    exprs: list[list[Expr]] = []
    rows: list[list[Row]] = []
    for r, layer in enumerate(net.layers):
        cur_exprs = []
        cur_rows = []
        for p, unit in enumerate(layer):
            if r == 0:
                left_expr: Expr = FeatureRef(unit.left)
            else:
                left_expr = exprs[r - 1][unit.left]
            cur_exprs.append(FnNode(unit.fn, left_expr, FeatureRef(unit.right)))
            left_id = unit.left if r == 0 else unit.left + 1
            cur_rows.append(Row(p + 1, unit.fn, left_id, unit.right))
        exprs.append(cur_exprs)
        rows.append(cur_rows)

    referenced: set[int] = set()
    for s in exprs[-1]:
        _collect_features(s, referenced)
    features = {j: net.encoders[j] for j in sorted(referenced)}
    return SyndromeComplex(
        syndromes=exprs[-1],
        features=features,
        layers=_prune_rows(rows),
        class_names=tuple(net.class_names),
        extended=net.config.extended_catalog,
    )


def _prune_rows(rows: list[list[Row]]) -> list[list[Row]]:
    """Drop units that do not feed the final layer."""
    keep: list[set[int]] = [set() for _ in rows]
    keep[-1] = {row.ident for row in rows[-1]}
    for r in range(len(rows) - 1, 0, -1):
        wanted = keep[r]
        for row in rows[r]:
            if row.ident in wanted:
                keep[r - 1].add(row.left)
    return [
        [row for row in layer if row.ident in keep[r]]
        for r, layer in enumerate(rows)
    ]


def _truth(sc: SyndromeComplex) -> dict[int, tuple[int, int, int, int]]:
    return {i: truth_row(i, sc.extended) for i in function_ids(sc.extended)}


def _eval_expr(expr: Expr, bits: Mapping[int, int], truth) -> int:
    if isinstance(expr, FeatureRef):
        try:
            return bits[expr.feature]
        except KeyError:
            raise EvaluationError(
                f"no bit assigned for feature {expr.feature}"
            ) from None
    u1 = _eval_expr(expr.left, bits, truth)
    u2 = _eval_expr(expr.right, bits, truth)
    return truth[expr.fn][(u1 << 1) | u2]


def syndrome_bits(sc: SyndromeComplex, assignment: Mapping[int, int]) -> list[int]:
    """Evaluate every syndrome on an assignment of feature id -> bit."""
    for ident, bit in assignment.items():
        if bit not in (0, 1):
            raise EvaluationError(f"feature {ident}: {bit!r} is not a bit")
    truth = _truth(sc)
    return [_eval_expr(s, assignment, truth) for s in sc.syndromes]


def evaluate(sc: SyndromeComplex, assignment: Mapping[int, int]) -> SignedDecision:
    """Majority vote of all syndromes on one assignment."""
    bits = syndrome_bits(sc, assignment)
    return vote_decision(sum(bits), len(bits))


def eval_expr_columns(
    expr: Expr,
    columns: Mapping[int, np.ndarray],
    truth: Mapping[int, tuple[int, int, int, int]],
) -> np.ndarray:
    """Vectorized expression evaluation over parallel bit columns."""
    if isinstance(expr, FeatureRef):
        try:
            return columns[expr.feature]
        except KeyError:
            raise EvaluationError(
                f"no bit column for feature {expr.feature}"
            ) from None
    u1 = eval_expr_columns(expr.left, columns, truth)
    u2 = eval_expr_columns(expr.right, columns, truth)
    table = np.array(truth[expr.fn], dtype=np.uint8)
    return table[(u1 << 1) | u2]


def symbolic(sc: SyndromeComplex) -> list[str]:
    """Render the complex in symbolic form, one definition per line."""
    lines = []
    for r, layer in enumerate(sc.layers[:-1], start=1):
        for row in layer:
            left = f"x_{row.left}" if r == 1 else f"y_{row.left}"
            lines.append(
                f"y_{row.ident} = g_{row.fn}({left}, x_{row.right})"
            )
    terms = []
    depth = len(sc.layers)
    for row in sc.layers[-1]:
        left = f"x_{row.left}" if depth == 1 else f"y_{row.left}"
        terms.append(f"g_{row.fn}({left}, x_{row.right})")
    lines.append(f"y = M-of-{sc.n}({', '.join(terms)})")
    return lines


def _format_feature(ident: int, enc: Encoder) -> str:
    parts = ["feature", str(ident), shlex.quote(enc.feature), f"kind={enc.kind}"]
    if enc.kind == "quantitative" and enc.threshold is not None:
        parts.append(f"u={enc.threshold!r}")
    if enc.kind == "nominal" and enc.category is not None:
        parts.append(f"category={shlex.quote(enc.category)}")
    if not enc.degenerate:
        parts.append(f"h={enc.polarity}")
    if enc.error is not None:
        parts.append(f"e={enc.error}")
    if enc.degenerate:
        parts.append("degenerate")
    return " ".join(parts)


def to_formula_table(model) -> str:
    """Serialize a network or complex to canonical formula table text.

    Canonical means: no comments, catalog line only when extended,
    classes line always, features sorted by id, layers in order with
    rows in stored order.  Parsing and reprinting canonical text is the
    identity.
    """
    sc = model if isinstance(model, SyndromeComplex) else extract(model)
    lines = []
    if sc.extended:
        lines.append("catalog extended")
    lines.append(f"classes {shlex.quote(sc.class_names[0])} {shlex.quote(sc.class_names[1])}")
    for ident in sorted(sc.features):
        lines.append(_format_feature(ident, sc.features[ident]))
    for r, layer in enumerate(sc.layers, start=1):
        lines.append(f"layer {r}")
        for row in layer:
            lines.append(f"{row.ident} {row.fn} {row.left} {row.right}")
    return "\n".join(lines) + "\n"


def _parse_feature_line(tokens: list[str], lineno: int) -> tuple[int, Encoder]:
    if len(tokens) < 3:
        raise ModelFormatError(f"line {lineno}: feature needs an id and a name")
    try:
        ident = int(tokens[1])
    except ValueError:
        raise ModelFormatError(
            f"line {lineno}: feature id {tokens[1]!r} is not an integer"
        ) from None
    if ident < 0:
        raise ModelFormatError(f"line {lineno}: feature id must be non-negative")
    name = tokens[2]
    kind = "boolean"
    threshold = None
    category = None
    polarity = 1
    error = None
    degenerate = False
    for tok in tokens[3:]:
        if tok == "degenerate":
            degenerate = True
            continue
        if "=" not in tok:
            raise ModelFormatError(f"line {lineno}: bad feature attribute {tok!r}")
        key, _, val = tok.partition("=")
        try:
            if key == "kind":
                kind = val
            elif key == "u":
                threshold = float(val)
            elif key == "h":
                polarity = int(val)
                if polarity not in (0, 1):
                    raise ValueError
            elif key == "category":
                category = val
            elif key == "e":
                error = int(val)
            else:
                raise ModelFormatError(
                    f"line {lineno}: unknown feature attribute {key!r}"
                )
        except ValueError:
            raise ModelFormatError(
                f"line {lineno}: bad value {val!r} for attribute {key!r}"
            ) from None
    if kind not in ("quantitative", "boolean", "nominal"):
        raise ModelFormatError(f"line {lineno}: unknown kind {kind!r}")
    if kind == "quantitative" and threshold is None and not degenerate:
        raise ModelFormatError(
            f"line {lineno}: quantitative feature {name!r} needs a threshold u="
        )
    return ident, Encoder(
        feature=name, kind=kind, polarity=polarity, threshold=threshold,
        category=category, error=error, degenerate=degenerate,
    )


def parse_formula_table(text: str, extended: bool | None = None) -> SyndromeComplex:
    """Parse formula table text into a syndrome complex.

    `extended` forces the catalog; by default the file's own catalog
    line (if any) decides.  Blank lines and # comments are ignored.
    Raises ModelFormatError for unknown function ids, references to
    undefined units or features, duplicate ids, and malformed lines.
    """
    class_names = ("0", "1")
    features: dict[int, Encoder] = {}
    layers: list[list[Row]] = []
    file_extended: bool | None = None
    in_layers = False

    for lineno, raw in enumerate(text.splitlines(), start=1):
        try:
            tokens = shlex.split(raw, comments=True)
        except ValueError as exc:
            raise ModelFormatError(f"line {lineno}: {exc}") from None
        if not tokens:
            continue
        head = tokens[0]
        if head == "catalog":
            if in_layers or features:
                raise ModelFormatError(
                    f"line {lineno}: catalog line must precede declarations"
                )
            if len(tokens) != 2 or tokens[1] not in ("standard", "extended"):
                raise ModelFormatError(
                    f"line {lineno}: expected 'catalog standard' or 'catalog extended'"
                )
            file_extended = tokens[1] == "extended"
        elif head == "classes":
            if len(tokens) != 3 or tokens[1] == tokens[2]:
                raise ModelFormatError(
                    f"line {lineno}: classes needs two distinct names"
                )
            class_names = (tokens[1], tokens[2])
        elif head == "feature":
            if in_layers:
                raise ModelFormatError(
                    f"line {lineno}: feature declared after layer rows"
                )
            ident, enc = _parse_feature_line(tokens, lineno)
            if ident in features:
                raise ModelFormatError(f"line {lineno}: duplicate feature id {ident}")
            if any(e.feature == enc.feature for e in features.values()):
                raise ModelFormatError(
                    f"line {lineno}: duplicate feature name {enc.feature!r}"
                )
            features[ident] = enc
        elif head == "layer":
            if len(tokens) != 2:
                raise ModelFormatError(f"line {lineno}: layer needs a number")
            try:
                r = int(tokens[1])
            except ValueError:
                raise ModelFormatError(
                    f"line {lineno}: layer number {tokens[1]!r} is not an integer"
                ) from None
            if r != len(layers) + 1:
                raise ModelFormatError(
                    f"line {lineno}: expected layer {len(layers) + 1}, got {r}"
                )
            layers.append([])
            in_layers = True
        else:
            if not in_layers:
                raise ModelFormatError(
                    f"line {lineno}: unexpected directive {head!r}"
                )
            if len(tokens) != 4:
                raise ModelFormatError(
                    f"line {lineno}: unit row needs four integers"
                )
            try:
                ident, fn, left, right = (int(t) for t in tokens)
            except ValueError:
                raise ModelFormatError(
                    f"line {lineno}: unit row needs four integers"
                ) from None
            layers[-1].append(Row(ident, fn, left, right))
            _check_row(layers, features, file_extended if extended is None else extended, lineno)

    use_extended = extended if extended is not None else bool(file_extended)
    if not layers or not layers[-1]:
        raise ModelFormatError("model has no final layer units")
    for r, layer in enumerate(layers, start=1):
        if not layer:
            raise ModelFormatError(f"layer {r} has no units")

    prev: dict[int, Expr] = {}
    for r, layer in enumerate(layers, start=1):
        cur: dict[int, Expr] = {}
        for row in layer:
            if r == 1:
                left_expr: Expr = FeatureRef(row.left)
            else:
                left_expr = prev[row.left]
            cur[row.ident] = FnNode(row.fn, left_expr, FeatureRef(row.right))
        prev = cur
    syndromes = [prev[row.ident] for row in layers[-1]]
    return SyndromeComplex(
        syndromes=syndromes,
        features=features,
        layers=layers,
        class_names=class_names,
        extended=use_extended,
    )


def _check_row(
    layers: list[list[Row]],
    features: dict[int, Encoder],
    extended: bool | None,
    lineno: int,
) -> None:
    row = layers[-1][-1]
    valid_ids = set(function_ids(bool(extended)))
    if row.fn not in valid_ids:
        raise ModelFormatError(
            f"line {lineno}: unknown function id {row.fn}"
            + ("" if extended else " (standard catalog)")
        )
    if any(other.ident == row.ident for other in layers[-1][:-1]):
        raise ModelFormatError(
            f"line {lineno}: duplicate unit id {row.ident} in layer {len(layers)}"
        )
    if row.right not in features:
        raise ModelFormatError(
            f"line {lineno}: undeclared feature x_{row.right}"
        )
    if len(layers) == 1:
        if row.left not in features:
            raise ModelFormatError(
                f"line {lineno}: undeclared feature x_{row.left}"
            )
        if _declared_degenerate(features, row.left) or _declared_degenerate(features, row.right):
            raise ModelFormatError(
                f"line {lineno}: unit reads a degenerate feature"
            )
    else:
        if not any(prev.ident == row.left for prev in layers[-2]):
            raise ModelFormatError(
                f"line {lineno}: unit y_{row.left} is not defined in layer {len(layers) - 1}"
            )
        if _declared_degenerate(features, row.right):
            raise ModelFormatError(
                f"line {lineno}: unit reads a degenerate feature"
            )


def _declared_degenerate(features: dict[int, Encoder], ident: int) -> bool:
    return features[ident].degenerate
