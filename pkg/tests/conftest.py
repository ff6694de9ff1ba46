import pytest
from hypothesis import strategies as st

from bkvpg.grid import GridPath, Instance, grid_points, make_instance

ACCEPTANCE_LINES = []


def record_criterion(number, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@st.composite
def raw_paths(draw, k_max=5, c_max=10, origin=(50, 50)):
    """Axis-alternating polylines; may self-intersect, never diagonal or collinear."""
    k = draw(st.integers(0, k_max))
    c = draw(st.integers(1, c_max))
    bends = draw(st.integers(0, k))
    horizontal = draw(st.booleans())
    x, y = origin
    verts = [(x, y)]
    for _ in range(bends + 1):
        step = draw(st.integers(1, c)) * draw(st.sampled_from([1, -1]))
        x, y = (x + step, y) if horizontal else (x, y + step)
        verts.append((x, y))
        horizontal = not horizontal
    return k, c, GridPath(0, 1, tuple(verts))


@st.composite
def small_instances(draw, n_max=10, side=8, k_max=2, c_max=3):
    """Valid instances on a small grid so paths collide often."""
    k = draw(st.integers(0, k_max))
    n = draw(st.integers(1, n_max))
    paths = []
    for pid in range(n):
        for _ in range(20):
            b = draw(st.integers(0, k))
            horizontal = draw(st.booleans())
            x, y = draw(st.integers(0, side)), draw(st.integers(0, side))
            verts = [(x, y)]
            for _ in range(b + 1):
                step = draw(st.integers(1, c_max)) * draw(st.sampled_from([1, -1]))
                x, y = (x + step, y) if horizontal else (x, y + step)
                verts.append((x, y))
                horizontal = not horizontal
            p = GridPath(pid, draw(st.integers(-5, 30)), tuple(verts))
            inside = all(0 <= a <= side and 0 <= b_ <= side for a, b_ in verts)
            if inside and len(grid_points(p)) == 1 + sum(p.segment_lengths()):
                paths.append(p)
                break
    if not paths:
        paths.append(GridPath(0, 1, ((0, 0),)))
    return Instance(k, tuple(paths))


def five_cycle(weights=(1, 1, 1, 1, 1)):
    """Paths 0..4 where i meets i+1 (mod 5) at a distinct grid point and nothing else."""
    return make_instance(1, [
        (weights[0], [(0, 0), (4, 0)]),
        (weights[1], [(4, 0), (4, 4)]),
        (weights[2], [(4, 4), (0, 4)]),
        (weights[3], [(0, 4), (0, 2)]),
        (weights[4], [(0, 2), (0, 0)]),
    ])


@pytest.fixture
def cycle5():
    return five_cycle()
