"""Seeded random instances of weighted grid paths.

Randomness comes from xorshift64* (Vigna, 2016): shifts 12/25/27 and output
multiplier 0x2545F4914F6CDD1D, state seeded directly from the 64-bit seed.
All arithmetic is plain Python integers, so a seed produces the same
instance on every platform.
"""

from __future__ import annotations

from dataclasses import dataclass

from .grid import GridPath, Instance, validate_path

MASK64 = (1 << 64) - 1
XORSHIFT_MULT = 0x2545F4914F6CDD1D
ZERO_SEED_STATE = 0x9E3779B97F4A7C15  # xorshift state must be non-zero

RETRIES = 100


class GenerationFailed(RuntimeError):
    pass


class XorShift64Star:
    def __init__(self, seed: int):
        self.state = (seed & MASK64) or ZERO_SEED_STATE

    def next_u64(self) -> int:
        x = self.state
        x ^= x >> 12
        x ^= (x << 25) & MASK64
        x ^= x >> 27
        self.state = x
        return (x * XORSHIFT_MULT) & MASK64

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi], unbiased by rejection."""
        if hi < lo:
            raise ValueError(f"empty range [{lo}, {hi}]")
        span = hi - lo + 1
        limit = (1 << 64) - (1 << 64) % span
        while True:
            r = self.next_u64()
            if r < limit:
                return lo + r % span


@dataclass(frozen=True)
class GenParams:
    n: int
    k: int
    c: int
    grid_w: int
    grid_h: int
    weight_min: int = 1
    weight_max: int = 100
    seed: int = 0

    def check(self) -> None:
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.k < 0:
            raise ValueError("k must be >= 0")
        if self.c < 1:
            raise ValueError("c must be >= 1")
        need = self.c * (self.k + 1)
        if self.grid_w < need or self.grid_h < need:
            raise ValueError(f"grid {self.grid_w}x{self.grid_h} too small, need >= {need} per side")
        if self.weight_min > self.weight_max:
            raise ValueError("weight_min > weight_max")


def _draw_vertices(rng: XorShift64Star, p: GenParams, kmax: int, cmax: int):
    x, y = rng.randint(0, p.grid_w), rng.randint(0, p.grid_h)
    bends = rng.randint(0, kmax)
    horizontal = rng.randint(0, 1) == 0
    verts = [(x, y)]
    for _ in range(bends + 1):
        step = rng.randint(1, cmax) * (1 if rng.randint(0, 1) else -1)
        x, y = (x + step, y) if horizontal else (x, y + step)
        verts.append((x, y))
        horizontal = not horizontal
    return tuple(verts)


def _place(rng: XorShift64Star, p: GenParams, pid: int, weight: int) -> GridPath:
    kmax, cmax = p.k, p.c
    bbox = (p.grid_w, p.grid_h)
    while True:
        for _ in range(RETRIES):
            path = GridPath(pid, weight, _draw_vertices(rng, p, kmax, cmax))
            if validate_path(path, p.k, bbox).ok:
                return path
        # shrink: fewer bends first, then shorter segments
        if kmax > 0:
            kmax -= 1
        elif cmax > 1:
            cmax = max(1, cmax // 2)
        else:
            raise GenerationFailed(f"could not place path {pid} in a {p.grid_w}x{p.grid_h} grid")


def generate(params: GenParams) -> Instance:
    params.check()
    rng = XorShift64Star(params.seed)
    paths = []
    for pid in range(params.n):
        weight = rng.randint(params.weight_min, params.weight_max)
        paths.append(_place(rng, params, pid, weight))
    return Instance(params.k, tuple(paths), (params.grid_w, params.grid_h))


def default_grid(n: int, k: int, c: int) -> int:
    """Side length giving a moderately dense intersection graph."""
    side = round(0.4 * (n * c * (k + 1)) ** 0.5)
    return max(side, c * (k + 1))
