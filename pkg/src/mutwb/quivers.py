"""Quivers with multiplicities, loops, and generalized mutation.

The arrow matrix counts arrows i -> j; self-loops are tracked separately
so that composite loops created by mutation are never silently merged.
Generalized mutation keeps every composite arrow and performs no 2-cycle
cancellation; :func:`reduce_quiver` erases loops and cancels 2-cycles.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import LoopAtVertex
from .seeds import Seed


@dataclass(frozen=True)
class Quiver:
    arrows: tuple[tuple[int, ...], ...]
    loops: tuple[int, ...]

    def __post_init__(self):
        arrows = tuple(tuple(int(x) for x in row) for row in self.arrows)
        object.__setattr__(self, "arrows", arrows)
        object.__setattr__(self, "loops", tuple(int(x) for x in self.loops))
        n = len(arrows)
        if len(self.loops) != n or any(len(row) != n for row in arrows):
            raise ValueError("arrow matrix must be square and match loops length")
        for i, row in enumerate(arrows):
            if row[i] != 0:
                raise ValueError("diagonal arrow entries must be zero; use loops")
            if any(x < 0 for x in row):
                raise ValueError("arrow multiplicities must be nonnegative")
        if any(x < 0 for x in self.loops):
            raise ValueError("loop counts must be nonnegative")

    @property
    def vertex_count(self) -> int:
        return len(self.arrows)

    def is_reduced(self) -> bool:
        """No loops and no 2-cycles."""
        if any(self.loops):
            return False
        n = self.vertex_count
        return all(
            not (self.arrows[i][j] and self.arrows[j][i])
            for i in range(n)
            for j in range(i + 1, n)
        )


def quiver_from_arrows(arrows: Sequence[Sequence[int]], loops: Sequence[int] | None = None) -> Quiver:
    n = len(arrows)
    return Quiver(tuple(tuple(row) for row in arrows), tuple(loops) if loops is not None else (0,) * n)


def quiver_of_seed(seed: Seed) -> Quiver:
    """The reduced quiver: [pairing(i,j)]_+ arrows i -> j, no loops."""
    n = seed.size
    arrows = tuple(
        tuple(max(seed.pairing(i, j), 0) if i != j else 0 for j in range(n)) for i in range(n)
    )
    return Quiver(arrows, (0,) * n)


def mutate_quiver(q: Quiver, k: int) -> Quiver:
    """Generalized mutation at a loop-free vertex; keeps all composites."""
    n = q.vertex_count
    if not 0 <= k < n:
        raise IndexError(f"vertex {k} out of range")
    if q.loops[k]:
        raise LoopAtVertex(f"vertex {k} carries {q.loops[k]} self-loop(s)")
    arrows = [[0] * n for _ in range(n)]
    loops = list(q.loops)
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            if i == k:
                arrows[j][k] += q.arrows[k][j]
            elif j == k:
                arrows[k][i] += q.arrows[i][k]
            else:
                arrows[i][j] += q.arrows[i][j]
    # composite [ab] for each pair a: i -> k, b: k -> j
    for i in range(n):
        if i == k or not q.arrows[i][k]:
            continue
        for j in range(n):
            if j == k or not q.arrows[k][j]:
                continue
            if i == j:
                loops[i] += q.arrows[i][k] * q.arrows[k][j]
            else:
                arrows[i][j] += q.arrows[i][k] * q.arrows[k][j]
    return Quiver(tuple(tuple(row) for row in arrows), tuple(loops))


def reduce_quiver(q: Quiver) -> Quiver:
    """Erase loops and cancel 2-cycles until none remain."""
    n = q.vertex_count
    arrows = tuple(
        tuple(max(q.arrows[i][j] - q.arrows[j][i], 0) if i != j else 0 for j in range(n))
        for i in range(n)
    )
    return Quiver(arrows, (0,) * n)


def b_matrix(q: Quiver) -> tuple[tuple[int, ...], ...]:
    """Signed arrow counts b_ij = a_ij - a_ji."""
    n = q.vertex_count
    return tuple(tuple(q.arrows[i][j] - q.arrows[j][i] for j in range(n)) for i in range(n))


def b_matrix_mutate(b: Sequence[Sequence[int]], k: int) -> tuple[tuple[int, ...], ...]:
    """Standard matrix mutation: b'_ij = -b_ij if k in {i,j}, else b_ij + sgn(b_ik)[b_ik b_kj]_+."""
    n = len(b)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            if i == k or j == k:
                row.append(-b[i][j])
            else:
                correction = 0
                if b[i][k] > 0 and b[k][j] > 0:
                    correction = b[i][k] * b[k][j]
                elif b[i][k] < 0 and b[k][j] < 0:
                    correction = -(-b[i][k]) * (-b[k][j])
                row.append(b[i][j] + correction)
        out.append(tuple(row))
    return tuple(out)


def quiver_to_dot(q: Quiver, name: str = "quiver") -> str:
    lines = [f"digraph {name} {{"]
    for i in range(q.vertex_count):
        lines.append(f'  v{i + 1} [label="{i + 1}"];')
    for i in range(q.vertex_count):
        if q.loops[i]:
            lines.append(f'  v{i + 1} -> v{i + 1} [label="{q.loops[i]}"];')
        for j in range(q.vertex_count):
            if q.arrows[i][j]:
                lines.append(f'  v{i + 1} -> v{j + 1} [label="{q.arrows[i][j]}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def quiver_to_json(q: Quiver) -> dict:
    return {"arrows": [list(row) for row in q.arrows], "loops": list(q.loops)}


def quiver_from_json(data: dict) -> Quiver:
    return quiver_from_arrows(data["arrows"], data.get("loops"))
