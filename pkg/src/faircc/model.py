"""Domain types for signed complete graphs, colors, fairness specs and
clusterings, plus the disagreement objective and the fairness checker.

All types are frozen after construction; every operation here is a pure
function, so instances can be shared freely between threads.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidInputError, ParseError


@dataclass(frozen=True)
class SignedCompleteGraph:
    """Complete graph on n vertices with a +/-1 label per unordered pair.

    ``signs`` is an n x n int8 matrix with +1 / -1 off the diagonal and 0 on
    it; it is always symmetric.
    """

    n: int
    signs: np.ndarray

    def __post_init__(self):
        if self.n < 1:
            raise InvalidInputError("graph needs at least one vertex")
        s = np.asarray(self.signs, dtype=np.int8)
        if s.shape != (self.n, self.n):
            raise InvalidInputError(f"sign matrix must be {self.n}x{self.n}")
        if not np.array_equal(s, s.T):
            raise InvalidInputError("sign matrix must be symmetric")
        if np.any(np.diag(s) != 0):
            raise InvalidInputError("self-pairs must carry no sign")
        off = s[~np.eye(self.n, dtype=bool)]
        if not np.all(np.abs(off) == 1):
            raise InvalidInputError("every distinct pair needs a +/-1 sign")
        s.setflags(write=False)
        object.__setattr__(self, "signs", s)

    @classmethod
    def from_negative_edges(cls, n, negative_edges):
        """Build from the canonical serialized form: unlisted pairs are
        positive."""
        signs = np.ones((n, n), dtype=np.int8)
        np.fill_diagonal(signs, 0)
        for u, v in negative_edges:
            if not (0 <= u < v < n):
                raise InvalidInputError(f"bad negative edge ({u}, {v})")
            signs[u, v] = signs[v, u] = -1
        return cls(n, signs)

    def sign(self, u, v):
        if u == v:
            raise InvalidInputError("no sign on a self-pair")
        return int(self.signs[u, v])

    def negative_edges(self):
        """Sorted list of negative pairs (u, v) with u < v."""
        iu, iv = np.triu_indices(self.n, k=1)
        neg = self.signs[iu, iv] < 0
        return [(int(u), int(v)) for u, v in zip(iu[neg], iv[neg])]

    def to_json(self):
        return json.dumps(
            {"n": self.n, "negative_edges": [list(e) for e in self.negative_edges()]}
        )

    @classmethod
    def from_json(cls, text):
        try:
            obj = json.loads(text)
            n = obj["n"]
            edges = obj["negative_edges"]
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise ParseError(f"bad graph JSON: {exc}") from exc
        return cls.from_negative_edges(n, edges)


@dataclass(frozen=True)
class ColorAssignment:
    """Per-vertex color ids in 0..k-1 plus per-color counts."""

    color_of: tuple
    counts: tuple = field(init=False)

    def __post_init__(self):
        colors = tuple(int(c) for c in self.color_of)
        if not colors:
            raise InvalidInputError("empty color assignment")
        k = max(colors) + 1
        if min(colors) < 0:
            raise InvalidInputError("color ids must be nonnegative")
        counts = [0] * k
        for c in colors:
            counts[c] += 1
        if any(cnt == 0 for cnt in counts):
            raise InvalidInputError("color ids must form a contiguous range")
        object.__setattr__(self, "color_of", colors)
        object.__setattr__(self, "counts", tuple(counts))

    @property
    def n(self):
        return len(self.color_of)

    @property
    def num_colors(self):
        return len(self.counts)

    def vertices_of(self, color):
        return [v for v, c in enumerate(self.color_of) if c == color]

    def to_csv(self):
        return "".join(f"{v},{c}\n" for v, c in enumerate(self.color_of))

    @classmethod
    def from_csv(cls, text):
        entries = {}
        for lineno, line in enumerate(text.splitlines(), start=1):
            line = line.strip()
            if not line:
                continue
            parts = line.split(",")
            try:
                v, c = int(parts[0]), int(parts[1])
            except (ValueError, IndexError) as exc:
                raise ParseError(f"bad colors CSV at line {lineno}: {line!r}") from exc
            if v in entries:
                raise ParseError(f"duplicate vertex {v} at line {lineno}")
            entries[v] = c
        if sorted(entries) != list(range(len(entries))):
            raise ParseError("colors CSV must cover vertex ids 0..n-1")
        return cls(tuple(entries[v] for v in range(len(entries))))


@dataclass(frozen=True)
class FairnessSpec:
    """Integer ratio constraints 1:p_i..1:q_i of the base color against every
    other color. Exact-ratio mode is p_i == q_i."""

    base_color: int
    bounds: dict  # non-base color id -> (p, q)

    def __post_init__(self):
        for color, (p, q) in self.bounds.items():
            if color == self.base_color:
                raise InvalidInputError("base color cannot carry a bound")
            if not (isinstance(p, int) and isinstance(q, int)):
                raise InvalidInputError("ratio bounds must be integers")
            if not 1 <= p <= q:
                raise InvalidInputError(f"need 1 <= p <= q for color {color}")
        object.__setattr__(self, "bounds", dict(self.bounds))

    @property
    def is_exact(self):
        return all(p == q for p, q in self.bounds.values())

    def colors(self):
        """All color ids the spec constrains, base first."""
        return [self.base_color] + sorted(self.bounds)

    @classmethod
    def exact(cls, ratios, base_color=0):
        """Spec with p_i = q_i = ratios[i] for non-base colors 1..k-1."""
        return cls(base_color, {c: (p, p) for c, p in ratios.items()})

    def describe(self):
        if self.is_exact:
            return "1:" + ":".join(str(self.bounds[c][0]) for c in sorted(self.bounds))
        lo = "1:" + ":".join(str(self.bounds[c][0]) for c in sorted(self.bounds))
        hi = "1:" + ":".join(str(self.bounds[c][1]) for c in sorted(self.bounds))
        return f"{lo}..{hi}"


@dataclass(frozen=True)
class Clustering:
    """Per-vertex cluster ids forming a contiguous range 0..k-1."""

    cluster_of: tuple

    def __post_init__(self):
        ids = tuple(int(c) for c in self.cluster_of)
        if not ids:
            raise InvalidInputError("empty clustering")
        used = set(ids)
        if used != set(range(len(used))):
            raise InvalidInputError("cluster ids must be contiguous from 0")
        object.__setattr__(self, "cluster_of", ids)

    @property
    def n(self):
        return len(self.cluster_of)

    @property
    def num_clusters(self):
        return max(self.cluster_of) + 1

    def clusters(self):
        """Member lists indexed by cluster id."""
        out = [[] for _ in range(self.num_clusters)]
        for v, c in enumerate(self.cluster_of):
            out[c].append(v)
        return out

    @classmethod
    def from_labels(cls, labels):
        """Canonicalize arbitrary labels: ids assigned in order of first
        appearance."""
        remap = {}
        ids = []
        for lab in labels:
            if lab not in remap:
                remap[lab] = len(remap)
            ids.append(remap[lab])
        return cls(tuple(ids))

    def to_json(self):
        return json.dumps({"cluster_of": list(self.cluster_of)})

    @classmethod
    def from_json(cls, text):
        try:
            obj = json.loads(text)
            ids = obj["cluster_of"]
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise ParseError(f"bad clustering JSON: {exc}") from exc
        return cls(tuple(ids))


@dataclass(frozen=True)
class FairnessReport:
    """Per-cluster color counts and pass/fail verdicts."""

    cluster_color_counts: tuple  # tuple of dicts, indexed by cluster id
    cluster_pass: tuple
    overall_pass: bool


def disagreements(g: SignedCompleteGraph, c: Clustering) -> int:
    """Negative edges trapped inside a cluster plus positive edges cut
    between clusters."""
    if c.n != g.n:
        raise InvalidInputError("clustering length does not match graph")
    labels = np.asarray(c.cluster_of)
    same = labels[:, None] == labels[None, :]
    bad = ((g.signs < 0) & same) | ((g.signs > 0) & ~same)
    return int(np.triu(bad, k=1).sum())


def agreements(g: SignedCompleteGraph, c: Clustering) -> int:
    return g.n * (g.n - 1) // 2 - disagreements(g, c)


def check_fairness(colors: ColorAssignment, c: Clustering, spec: FairnessSpec) -> FairnessReport:
    """A cluster with n1 base vertices and n_i of color i passes iff n1 >= 1
    and n1*p_i <= n_i <= n1*q_i for every constrained color i."""
    if colors.n != c.n:
        raise InvalidInputError("colors and clustering length mismatch")
    counts = []
    verdicts = []
    for members in c.clusters():
        hist = {}
        for v in members:
            col = colors.color_of[v]
            hist[col] = hist.get(col, 0) + 1
        n1 = hist.get(spec.base_color, 0)
        ok = n1 >= 1
        for color, (p, q) in spec.bounds.items():
            ni = hist.get(color, 0)
            ok = ok and n1 * p <= ni <= n1 * q
        counts.append(hist)
        verdicts.append(ok)
    return FairnessReport(tuple(counts), tuple(verdicts), all(verdicts))


def color_distribution(colors: ColorAssignment, c: Clustering):
    """Per-cluster color histograms, largest cluster first; ties broken by
    the smallest contained vertex id."""
    if colors.n != c.n:
        raise InvalidInputError("colors and clustering length mismatch")
    rows = []
    for members in c.clusters():
        hist = {}
        for v in members:
            col = colors.color_of[v]
            hist[col] = hist.get(col, 0) + 1
        rows.append((-len(members), min(members), hist))
    rows.sort(key=lambda r: (r[0], r[1]))
    return [hist for _, _, hist in rows]
