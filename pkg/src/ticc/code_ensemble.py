"""Time-invariant (n, k, W) code templates.

A code is fully described by an (n-k) x n matrix of tap delays: check type
``i`` touches stream ``j`` at delay ``delays[i][j]``, i.e. its parity-check
polynomial entry is ``D**delays[i][j]``. Streams and check types are indexed
from 0 in the arrays; user-facing output numbers them from 1.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import InvalidParameters, SpecParseError
from .seeding import PRNG_NAME, make_rng

FORMAT_MAGIC = "ticc"
FORMAT_VERSION = 1


def check_parameters(n: int, k: int, w: int) -> None:
    if not (isinstance(n, (int, np.integer)) and isinstance(k, (int, np.integer))):
        raise InvalidParameters("n and k must be integers")
    if not 0 < k < n:
        raise InvalidParameters(f"need 0 < k < n, got n={n}, k={k}")
    if w < 1:
        raise InvalidParameters(f"need w >= 1, got w={w}")


@dataclass(frozen=True)
class CodeSpec:
    """An (n, k, W) code template. Immutable, hashable, safe to share."""

    n: int
    k: int
    w: int
    delays: tuple[tuple[int, ...], ...]
    seed: int | None = field(default=None)
    prng: str | None = field(default=None)

    def __post_init__(self):
        check_parameters(self.n, self.k, self.w)
        rows = tuple(tuple(int(d) for d in row) for row in self.delays)
        if len(rows) != self.n - self.k:
            raise InvalidParameters(f"expected {self.n - self.k} check rows, got {len(rows)}")
        for i, row in enumerate(rows):
            if len(row) != self.n:
                raise InvalidParameters(f"check row {i + 1} has {len(row)} entries, expected {self.n}")
            for d in row:
                if not 0 <= d < self.w:
                    raise InvalidParameters(f"delay {d} in check row {i + 1} outside [0, {self.w - 1}]")
        object.__setattr__(self, "delays", rows)

    @property
    def c(self) -> int:
        """Number of check types, n - k."""
        return self.n - self.k

    @property
    def rate(self) -> float:
        return self.k / self.n

    def delay_array(self) -> np.ndarray:
        return np.array(self.delays, dtype=np.int64).reshape(self.c, self.n)

    def description_bits(self) -> float:
        return self.n * self.c * math.log2(self.w) if self.w > 1 else 0.0

    def spec_hash(self) -> str:
        """Short hash of (n, k, w, delays); ignores seed/prng provenance."""
        body = f"{self.n} {self.k} {self.w}\n" + "\n".join(" ".join(map(str, r)) for r in self.delays)
        return hashlib.sha256(body.encode("ascii")).hexdigest()[:16]

    def identical_rows(self) -> list[tuple[int, int]]:
        """Pairs (i, i') of check types (1-based) with equal delay rows."""
        out = []
        for a in range(self.c):
            for b in range(a + 1, self.c):
                if self.delays[a] == self.delays[b]:
                    out.append((a + 1, b + 1))
        return out


class DiffVector(NamedTuple):
    stream_delta: int
    time_delta: int


def sample(n: int, k: int, w: int, seed) -> CodeSpec:
    """Draw a code from the (n, k, W) ensemble; every delay uniform on {0..w-1}."""
    check_parameters(n, k, w)
    rng = make_rng(seed)
    delays = rng.integers(0, w, size=(n - k, n))
    recorded = int(seed) if not isinstance(seed, np.random.Generator) else None
    return CodeSpec(n, k, w, tuple(map(tuple, delays.tolist())), seed=recorded, prng=PRNG_NAME)


def memory(spec: CodeSpec) -> int:
    return max(max(row) for row in spec.delays)


def constraint_length(spec: CodeSpec) -> int:
    return sum(max(row) for row in spec.delays)


def diff_vectors(spec: CodeSpec) -> list[tuple[int, DiffVector]]:
    """All (check, v) with v the offset between two taps of the same check.

    Check indices are 1-based. For each check and each ordered stream pair
    j != j' the vector is (j' - j, d[j'] - d[j]).
    """
    out = []
    for i, row in enumerate(spec.delays):
        for j in range(spec.n):
            for jp in range(spec.n):
                if j != jp:
                    out.append((i + 1, DiffVector(jp - j, row[jp] - row[j])))
    return out


def has_distinct_vectors(spec: CodeSpec) -> bool:
    """True iff all difference vectors, pooled over every check, are distinct."""
    vecs = [v for _, v in diff_vectors(spec)]
    return len(set(vecs)) == len(vecs)


def serialize(spec: CodeSpec) -> str:
    seed = "-" if spec.seed is None else str(spec.seed)
    prng = "-" if spec.prng is None else spec.prng
    lines = [f"{FORMAT_MAGIC} {FORMAT_VERSION}", f"{spec.n} {spec.k} {spec.w} {seed} {prng}"]
    lines.extend(" ".join(str(d) for d in row) for row in spec.delays)
    return "\n".join(lines) + "\n"


def _int_field(tok: str, line: int, col: int, what: str) -> int:
    try:
        return int(tok, 10)
    except ValueError:
        raise SpecParseError(f"expected integer {what}, got {tok!r}", line, col) from None


def _tokens(text: str):
    # yields (1-based column, token)
    col = 0
    for part in text.split(" "):
        if part:
            yield col + 1, part
        col += len(part) + 1


def parse(text: str) -> CodeSpec:
    """Parse the line-oriented spec format; errors carry line/column."""
    lines = [
        (no, raw.rstrip("\r").replace("\t", " "))
        for no, raw in enumerate(text.split("\n"), start=1)
    ]
    lines = [(no, s) for no, s in lines if s.strip() and not s.lstrip().startswith("#")]
    if not lines:
        raise SpecParseError("empty spec file", 1, 1)

    no, magic = lines[0]
    toks = list(_tokens(magic))
    if len(toks) != 2 or toks[0][1] != FORMAT_MAGIC:
        raise SpecParseError(f"expected header '{FORMAT_MAGIC} {FORMAT_VERSION}'", no, 1)
    if toks[1][1] != str(FORMAT_VERSION):
        raise SpecParseError(f"unsupported format version {toks[1][1]!r}", no, toks[1][0])

    if len(lines) < 2:
        raise SpecParseError("missing parameter line 'n k w seed prng'", no + 1, 1)
    no, params = lines[1]
    toks = list(_tokens(params))
    if len(toks) not in (3, 4, 5):
        raise SpecParseError(f"parameter line needs 3 to 5 fields, got {len(toks)}", no, 1)
    n = _int_field(toks[0][1], no, toks[0][0], "n")
    k = _int_field(toks[1][1], no, toks[1][0], "k")
    w = _int_field(toks[2][1], no, toks[2][0], "w")
    seed = None
    prng = None
    if len(toks) >= 4 and toks[3][1] != "-":
        seed = _int_field(toks[3][1], no, toks[3][0], "seed")
    if len(toks) == 5 and toks[4][1] != "-":
        prng = toks[4][1]
    if not 0 < k < n:
        raise SpecParseError(f"need 0 < k < n, got n={n}, k={k}", no, toks[0][0])
    if w < 1:
        raise SpecParseError(f"need w >= 1, got {w}", no, toks[2][0])

    rows = lines[2:]
    c = n - k
    if len(rows) > c:
        raise SpecParseError(f"expected {c} delay rows, found {len(rows)}", rows[c][0], 1)
    delays = []
    for no, body in rows:
        toks = list(_tokens(body))
        if len(toks) != n:
            raise SpecParseError(f"expected {n} delays, found {len(toks)}", no, 1)
        row = []
        for col, tok in toks:
            d = _int_field(tok, no, col, "delay")
            if not 0 <= d < w:
                raise SpecParseError(f"delay {d} outside [0, {w - 1}]", no, col)
            row.append(d)
        delays.append(tuple(row))
    if len(rows) < c:
        at = rows[-1][0] + 1 if rows else no + 1
        raise SpecParseError(f"expected {c} delay rows, found {len(rows)}", at, 1)
    return CodeSpec(n, k, w, tuple(delays), seed=seed, prng=prng)


def load(path) -> CodeSpec:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def save(spec: CodeSpec, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize(spec))
