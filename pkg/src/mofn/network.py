"""Self-organizing growth of a layered network of two-input logic units.

Layer 1 enumerates g_i(x_j, x_k) over ordered pairs of distinct active
features and every catalog function.  Layer r > 1 enumerates
g_i(y_j, x_k): left input from the previous layer, right input a raw
encoded feature.  A candidate survives only if its misclassification
count does not exceed that of either input (the external selection
criterion), so units can only refine what feeds them.

Survivors are deduplicated on their output vector over the training
rows, keeping the lowest (error, fn, left, right), and the layer is cut
to a beam width.  Growth stops when a layer reaches error zero, when no
candidate survives, when a grown layer would regress the best error,
when the best error stalls past the configured patience, or at a depth
cap.  The network then ends at the earliest layer that reached the best
error, cut down to the units that achieved it; those units are the
syndromes that vote by majority at classification time.  Layer minimum
errors are non-increasing by construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .encoding import EncodedDataset, Encoder, encode_dataset, encode_value
from .data import Dataset
from .errors import EvaluationError, TrainingError
from .logic import function_ids, truth_row, truth_tables
from .rules import SignedDecision, vote_decision


@dataclass(frozen=True)
class Unit:
    """One trained unit: y = g_fn(left, right).

    In layer 1 `left` is a feature index; in later layers it is the
    position of the parent unit in the previous layer.  `right` is
    always a feature index.
    """

    fn: int
    left: int
    right: int
    error: int


@dataclass(frozen=True)
class TrainConfig:
    beam_width: int = 64
    max_layers: int = 10
    patience: int = 1
    extended_catalog: bool = False

    def __post_init__(self) -> None:
        if self.beam_width < 1:
            raise TrainingError("beam_width must be at least 1")
        if self.max_layers < 1:
            raise TrainingError("max_layers must be at least 1")
        if self.patience < 1:
            raise TrainingError("patience must be at least 1")


@dataclass
class TrainReport:
    """Summary of one training run."""

    layer_sizes: list[int]
    layer_min_errors: list[int]
    feature_errors: list[int | None]
    active_features: list[int]
    vote_error: int
    n_rows: int

    def lines(self, feature_names: list[str]) -> list[str]:
        out = [f"rows: {self.n_rows}"]
        out.append(
            "active features: "
            + ", ".join(feature_names[j] for j in self.active_features)
        )
        for r, (size, err) in enumerate(
            zip(self.layer_sizes, self.layer_min_errors), start=1
        ):
            out.append(f"layer {r}: {size} unit(s), best error {err}")
        out.append(f"majority vote error: {self.vote_error}/{self.n_rows}")
        return out


@dataclass
class Network:
    """A trained network plus the encoders that feed it."""

    encoders: list[Encoder]
    feature_names: list[str]
    layers: list[list[Unit]]
    config: TrainConfig
    class_names: tuple[str, str] = ("0", "1")
    report: TrainReport | None = None

    @property
    def n_syndromes(self) -> int:
        return len(self.layers[-1])

    def referenced_features(self) -> set[int]:
        """Feature indices reachable from the final layer."""
        feats: set[int] = set()
        keep: set[int] = set(range(len(self.layers[-1])))
        for r in range(len(self.layers) - 1, -1, -1):
            parents: set[int] = set()
            for p in keep:
                unit = self.layers[r][p]
                feats.add(unit.right)
                if r == 0:
                    feats.add(unit.left)
                else:
                    parents.add(unit.left)
            keep = parents
        return feats


@dataclass(frozen=True)
class _Candidate:
    error: int
    fn: int
    left: int
    right: int
    outputs: np.ndarray = field(compare=False)


def _select(candidates: list[_Candidate], beam_width: int) -> list[_Candidate]:
    """Order by (error, fn, left, right), drop duplicate output vectors,
    cut to the beam.  Duplicates share an error, so keeping the first
    keeps the lowest (fn, left, right)."""
    candidates.sort(key=lambda c: (c.error, c.fn, c.left, c.right))
    seen: set[bytes] = set()
    kept = []
    for c in candidates:
        key = c.outputs.tobytes()
        if key in seen:
            continue
        seen.add(key)
        kept.append(c)
        if len(kept) == beam_width:
            break
    return kept


def _feature_errors(enc: EncodedDataset) -> dict[int, int]:
    y = enc.labels
    return {
        j: int(np.sum(enc.matrix[:, j] != y))
        for j in enc.active
    }


def _truth_matrix(extended: bool) -> tuple[list[int], np.ndarray]:
    ids = list(function_ids(extended))
    rows = np.array([truth_row(i, extended) for i in ids], dtype=np.uint8)
    return ids, rows


def build_first_layer(enc: EncodedDataset, config: TrainConfig) -> list[_Candidate]:
    """All surviving g_i(x_j, x_k) over ordered pairs of active features."""
    ids, truth = _truth_matrix(config.extended_catalog)
    y = enc.labels
    feat_err = _feature_errors(enc)
    candidates = []
    for j in enc.active:
        col_j = enc.matrix[:, j]
        for k in enc.active:
            if k == j:
                continue
            code = (col_j << 1) | enc.matrix[:, k]
            outputs = truth[:, code]                      # (n_fns, n_rows)
            errors = np.sum(outputs != y, axis=1)
            bound = min(feat_err[j], feat_err[k])
            for f in np.nonzero(errors <= bound)[0]:
                candidates.append(_Candidate(
                    error=int(errors[f]), fn=ids[f], left=j, right=k,
                    outputs=outputs[f],
                ))
    return _select(candidates, config.beam_width)


def grow_layer(
    prev: list[_Candidate],
    enc: EncodedDataset,
    config: TrainConfig,
) -> list[_Candidate]:
    """All surviving g_i(y_j, x_k) over the previous layer and features.

    Candidates whose outputs equal their own left parent's are dropped
    as no-progress clones before selection.
    """
    ids, truth = _truth_matrix(config.extended_catalog)
    y = enc.labels
    feat_err = _feature_errors(enc)
    candidates = []
    for p, parent in enumerate(prev):
        for k in enc.active:
            code = (parent.outputs << 1) | enc.matrix[:, k]
            outputs = truth[:, code]
            errors = np.sum(outputs != y, axis=1)
            bound = min(parent.error, feat_err[k])
            for f in np.nonzero(errors <= bound)[0]:
                out = outputs[f]
                if np.array_equal(out, parent.outputs):
                    continue
                candidates.append(_Candidate(
                    error=int(errors[f]), fn=ids[f], left=p, right=k,
                    outputs=out,
                ))
    return _select(candidates, config.beam_width)


def _vote_rows(final: list[_Candidate]) -> np.ndarray:
    stacked = np.stack([c.outputs for c in final], axis=0)
    return stacked.sum(axis=0, dtype=np.int64)


def train(ds: Dataset, config: TrainConfig | None = None) -> Network:
    """Grow a network on a dataset and return it with a training report."""
    config = config or TrainConfig()
    enc = encode_dataset(ds)
    if len(enc.active) == 0:
        raise TrainingError("no informative features: every encoder is degenerate")
    if len(enc.active) == 1:
        only = enc.feature_names[enc.active[0]]
        raise TrainingError(
            f"only one informative feature ({only}); need at least two to form pairs"
        )

    first = build_first_layer(enc, config)
    if not first:
        raise TrainingError(
            "first layer is empty: no candidate survived selection"
        )
    layers = [first]
    best = min(c.error for c in first)
    stale = 0
    while best > 0 and len(layers) < config.max_layers:
        nxt = grow_layer(layers[-1], enc, config)
        if not nxt:
            break
        new_best = min(c.error for c in nxt)
        if new_best > best:
            # the best unit was a dead end; a layer that regresses
            # signals exhausted refinement and is discarded
            break
        layers.append(nxt)
        if new_best < best:
            best = new_best
            stale = 0
        else:
            stale += 1
            if stale >= config.patience:
                break
        if new_best == 0:
            break

    # Trim trailing plateau layers back to the earliest layer that
    # reached the best error, then keep only its best units.  Those
    # units are the syndromes that vote.
    mins = [min(c.error for c in layer) for layer in layers]
    final = mins.index(best)
    layers = layers[: final + 1]
    layers[-1] = [c for c in layers[-1] if c.error == best]
    units = [
        [Unit(c.fn, c.left, c.right, c.error) for c in layer]
        for layer in layers
    ]
    m1 = _vote_rows(layers[-1])
    n_syn = len(layers[-1])
    decided_1 = 2 * m1 > n_syn
    decided_0 = 2 * m1 < n_syn
    correct = np.where(enc.labels == 1, decided_1, decided_0)
    report = TrainReport(
        layer_sizes=[len(layer) for layer in layers],
        layer_min_errors=[min(c.error for c in layer) for layer in layers],
        feature_errors=[e.error for e in enc.encoders],
        active_features=list(enc.active),
        vote_error=int(np.sum(~correct)),
        n_rows=ds.n,
    )
    return Network(
        encoders=enc.encoders,
        feature_names=list(enc.feature_names),
        layers=units,
        config=config,
        class_names=ds.class_names,
        report=report,
    )


def _reachable(net: Network) -> list[set[int]]:
    """Unit positions per layer that feed the final layer."""
    keep: list[set[int]] = [set() for _ in net.layers]
    keep[-1] = set(range(len(net.layers[-1])))
    for r in range(len(net.layers) - 1, 0, -1):
        for p in keep[r]:
            keep[r - 1].add(net.layers[r][p].left)
    return keep


def classify(net: Network, row: Mapping[str, object]) -> SignedDecision:
    """Encode a raw row, run it through the network, majority-vote."""
    needed = net.referenced_features()
    bits: dict[int, int] = {}
    for j in needed:
        name = net.feature_names[j]
        if name not in row:
            raise EvaluationError(f"missing value for feature {name!r}")
        bits[j] = encode_value(net.encoders[j], row[name])

    keep = _reachable(net)
    prev: dict[int, int] = {}
    for r, layer in enumerate(net.layers):
        cur: dict[int, int] = {}
        for p in sorted(keep[r]):
            unit = layer[p]
            u1 = bits[unit.left] if r == 0 else prev[unit.left]
            u2 = bits[unit.right]
            cur[p] = truth_row(unit.fn, net.config.extended_catalog)[(u1 << 1) | u2]
        prev = cur
    return vote_decision(sum(prev.values()), len(prev))
