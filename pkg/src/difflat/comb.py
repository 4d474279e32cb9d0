"""Weighted Dirac combs tabulated on lattice points inside a cutoff ball.

A comb stores bounded complex weights keyed by integer lattice coordinates;
absent keys inside the ball mean weight zero, so indicator subsets stay
sparse.  Built-in weight rules cover constant weights, the parity
checkerboard, visible lattice points, k-th-power-free integers, seeded
Bernoulli site percolation and explicit tables.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import MalformedCombFile, NotAnIndicatorComb, RuleDimensionMismatch
from .lattice import Lattice, ball_volume, enumerate_ball, make_lattice
from .textio import fmt

RULE_KINDS = (
    "constant",
    "indicator_checkerboard",
    "visible_points",
    "k_free_integers",
    "bernoulli",
    "custom_table",
)

RNG_NAME = "pcg64"  # numpy default_rng bit generator, fixed for reproducibility


@dataclass(frozen=True)
class WeightRule:
    """Descriptor for a weight assignment; same rule + seed => same comb."""

    kind: str
    value: complex = 1.0
    k: int = 2
    p: float = 0.5
    seed: int = 0
    table: tuple = ()  # ((coords, complex weight), ...) for custom_table

    def __post_init__(self):
        if self.kind not in RULE_KINDS:
            raise ValueError(f"unknown rule kind {self.kind!r}")

    @property
    def stochastic(self) -> bool:
        return self.kind == "bernoulli"

    @classmethod
    def constant(cls, value=1.0):
        return cls(kind="constant", value=complex(value))

    @classmethod
    def checkerboard(cls):
        return cls(kind="indicator_checkerboard")

    @classmethod
    def visible_points(cls):
        return cls(kind="visible_points")

    @classmethod
    def k_free(cls, k=2):
        if int(k) < 2:
            raise ValueError("k must be at least 2")
        return cls(kind="k_free_integers", k=int(k))

    @classmethod
    def bernoulli(cls, p, seed):
        if not 0.0 <= p <= 1.0:
            raise ValueError("p must lie in [0, 1]")
        return cls(kind="bernoulli", p=float(p), seed=int(seed))

    @classmethod
    def custom(cls, table):
        items = tuple(sorted((tuple(int(c) for c in k), complex(v)) for k, v in dict(table).items()))
        return cls(kind="custom_table", table=items)


@dataclass(eq=False)
class WeightedComb:
    """Weights on the lattice points of an open cutoff ball around 0."""

    lattice: Lattice
    cutoff_radius: float
    weights: dict
    weight_bound: float
    rng_name: str | None = None
    seed: int | None = None
    _cache: dict = field(default_factory=dict, repr=False)

    def __len__(self) -> int:
        return len(self.weights)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, WeightedComb)
            and self.lattice == other.lattice
            and self.cutoff_radius == other.cutoff_radius
            and self.weights == other.weights
        )

    def coords_array(self) -> np.ndarray:
        """Nonzero-weight coordinates, lexicographically sorted, (M, dim)."""
        if "coords" not in self._cache:
            n = self.lattice.dim
            arr = np.array(sorted(self.weights), dtype=np.int64).reshape(-1, n)
            warr = np.array([self.weights[tuple(c)] for c in arr], dtype=np.complex128)
            self._cache["coords"] = arr
            self._cache["weights"] = warr
        return self._cache["coords"]

    def weights_array(self) -> np.ndarray:
        self.coords_array()
        return self._cache["weights"]

    def ball_coords(self) -> np.ndarray:
        """Every lattice point of the cutoff ball (zero weights included)."""
        if "ball" not in self._cache:
            self._cache["ball"] = enumerate_ball(self.lattice, self.cutoff_radius)
        return self._cache["ball"]

    def total_weight(self) -> complex:
        return complex(self.weights_array().sum()) if self.weights else 0j

    def is_indicator(self, tol: float = 1e-12) -> bool:
        w = self.weights_array()
        return bool(np.all(np.abs(w - 1.0) <= tol) or w.size == 0)


def make_comb(lattice: Lattice, cutoff_radius: float, weights, rng_name=None, seed=None) -> WeightedComb:
    """Normalize and validate a weight table into a :class:`WeightedComb`.

    Exact zeros are dropped; every remaining key must lie in the open cutoff
    ball.
    """
    cutoff_radius = float(cutoff_radius)
    if cutoff_radius <= 0:
        raise ValueError("cutoff_radius must be positive")
    table = {}
    for key, val in dict(weights).items():
        cval = complex(val)
        if cval != 0:
            table[tuple(int(c) for c in key)] = cval
    if table:
        coords = np.array(sorted(table), dtype=np.int64)
        if coords.shape[1] != lattice.dim:
            raise ValueError("weight keys must match the lattice dimension")
        x = coords.astype(float) @ lattice.basis.T
        r2 = np.einsum("ij,ij->i", x, x)
        if np.any(r2 >= cutoff_radius * cutoff_radius):
            bad = tuple(coords[int(np.argmax(r2))])
            raise ValueError(f"weight key {bad} lies outside the open cutoff ball")
        bound = float(np.max(np.abs(np.array(list(table.values())))))
    else:
        bound = 0.0
    return WeightedComb(
        lattice=lattice,
        cutoff_radius=cutoff_radius,
        weights=table,
        weight_bound=bound,
        rng_name=rng_name,
        seed=seed,
    )


def _kfree_mask(max_abs: int, k: int) -> np.ndarray:
    """ok[m] for 0 <= m <= max_abs: no prime power p^k divides m (ok[0]=True)."""
    ok = np.ones(max_abs + 1, dtype=bool)
    if max_abs >= 1:
        limit = int(round(max_abs ** (1.0 / k))) + 1
        sieve = np.ones(limit + 1, dtype=bool)
        sieve[:2] = False
        for p in range(2, limit + 1):
            if sieve[p]:
                sieve[2 * p :: p] = False
                pk = p**k
                if pk <= max_abs:
                    ok[pk::pk] = False
    return ok


def generate(rule: WeightRule, lat: Lattice, r: float) -> WeightedComb:
    """Tabulate the rule on every lattice point of the open ball B_r(0).

    Bernoulli combs draw one uniform per ball point from a seeded pcg64
    stream in lexicographic point order, so regeneration with the same seed
    reproduces the comb bit for bit.
    """
    coords = enumerate_ball(lat, r)
    n = lat.dim
    rng_name = None
    seed = None

    if rule.kind == "constant":
        w = np.full(coords.shape[0], complex(rule.value), dtype=np.complex128)
    elif rule.kind == "indicator_checkerboard":
        w = ((coords.sum(axis=1) % 2) == 0).astype(np.complex128)
    elif rule.kind == "visible_points":
        if n < 2:
            raise RuleDimensionMismatch("visible_points needs dimension >= 2")
        g = np.gcd.reduce(np.abs(coords), axis=1)
        w = (g == 1).astype(np.complex128)  # gcd 0 at the origin: not visible
    elif rule.kind == "k_free_integers":
        if n != 1:
            raise RuleDimensionMismatch("k_free_integers needs dimension 1")
        m = np.abs(coords[:, 0])
        ok = _kfree_mask(int(m.max(initial=0)), rule.k)
        w = ok[m].astype(np.complex128)
    elif rule.kind == "bernoulli":
        gen = np.random.default_rng(rule.seed)
        w = (gen.random(coords.shape[0]) < rule.p).astype(np.complex128)
        rng_name = RNG_NAME
        seed = rule.seed
    elif rule.kind == "custom_table":
        table = {k: v for k, v in rule.table}
        w = np.array([table.get(tuple(c), 0j) for c in coords], dtype=np.complex128)
    else:  # pragma: no cover - guarded by WeightRule
        raise ValueError(rule.kind)

    nz = w != 0
    weights = {tuple(c): complex(v) for c, v in zip(coords[nz], w[nz])}
    return make_comb(lat, r, weights, rng_name=rng_name, seed=seed)


def complement(comb: WeightedComb) -> WeightedComb:
    """Indicator comb of the ball points *not* in the set (w' = 1 - w)."""
    w = comb.weights_array()
    if w.size and not (
        np.all((np.abs(w) <= 1e-12) | (np.abs(w - 1.0) <= 1e-12)) and np.all(np.abs(w.imag) <= 1e-12)
    ):
        raise NotAnIndicatorComb("complement requires weights in {0, 1}")
    members = {k for k, v in comb.weights.items() if abs(v - 1.0) <= 1e-12}
    ball = comb.ball_coords()
    weights = {tuple(c): 1.0 + 0j for c in ball if tuple(c) not in members}
    return make_comb(comb.lattice, comb.cutoff_radius, weights, rng_name=comb.rng_name, seed=comb.seed)


def empirical_density(comb: WeightedComb) -> complex:
    """Total weight divided by the cutoff-ball volume."""
    return comb.total_weight() / ball_volume(comb.lattice.dim, comb.cutoff_radius)


def save_comb(comb: WeightedComb, path) -> None:
    """Write the comb as text: header lines then one point per line.

    Data lines hold the integer coordinates followed by the real and
    imaginary weight parts at full precision, in lexicographic point order.
    """
    lines = [f"#dim {comb.lattice.dim}"]
    lines.append("#basis " + " ".join(fmt(v) for v in comb.lattice.basis.ravel(order="C")))
    lines.append(f"#radius {fmt(comb.cutoff_radius)}")
    if comb.rng_name is not None:
        lines.append(f"#rng {comb.rng_name} #seed {comb.seed}")
    coords = comb.coords_array()
    w = comb.weights_array()
    for c, v in zip(coords, w):
        lines.append(" ".join(str(int(x)) for x in c) + f" {fmt(v.real)} {fmt(v.imag)}")
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def load_comb(path) -> WeightedComb:
    """Read a comb file written by :func:`save_comb` (exact round trip)."""
    dim = None
    basis = None
    radius = None
    rng_name = None
    seed = None
    weights = {}
    with open(path, "r", encoding="ascii") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                fields = line.split()
                key = fields[0]
                try:
                    if key == "#dim":
                        dim = int(fields[1])
                    elif key == "#basis":
                        if dim is None:
                            raise MalformedCombFile(path, lineno, "#basis before #dim")
                        if len(fields) != 1 + dim * dim:
                            raise MalformedCombFile(
                                path, lineno, f"#basis expects {dim * dim} entries"
                            )
                        basis = np.array([float(v) for v in fields[1:]]).reshape(dim, dim)
                    elif key == "#radius":
                        radius = float(fields[1])
                    elif key == "#rng":
                        rng_name = fields[1]
                        if len(fields) >= 4 and fields[2] == "#seed":
                            seed = int(fields[3])
                        else:
                            raise MalformedCombFile(path, lineno, "#rng line missing #seed")
                    else:
                        raise MalformedCombFile(path, lineno, f"unknown header {key!r}")
                except MalformedCombFile:
                    raise
                except (IndexError, ValueError):
                    raise MalformedCombFile(path, lineno, f"cannot parse header {line!r}") from None
                continue
            if dim is None:
                raise MalformedCombFile(path, lineno, "data line before #dim header")
            fields = line.split()
            if len(fields) != dim + 2:
                raise MalformedCombFile(
                    path, lineno, f"expected {dim} coords plus re and im, got {len(fields)} fields"
                )
            try:
                key = tuple(int(v) for v in fields[:dim])
                val = complex(float(fields[dim]), float(fields[dim + 1]))
            except ValueError:
                raise MalformedCombFile(path, lineno, f"cannot parse data line {line!r}") from None
            weights[key] = val
    if dim is None or basis is None or radius is None:
        raise MalformedCombFile(path, 0, "missing #dim, #basis or #radius header")
    lat = make_lattice(basis)
    try:
        return make_comb(lat, radius, weights, rng_name=rng_name, seed=seed)
    except ValueError as exc:
        raise MalformedCombFile(path, 0, str(exc)) from None
