"""Seeded generators for random well-typed globe words and random fields.

Pushes across reduced paths are used to manufacture level-1-composable
words; everything returned has already been through the validating
constructors.
"""

from __future__ import annotations

import math
import random

from hlgf import gauge_group as gg
from hlgf import globes as gl
from hlgf.complexes import SkeletalComplex
from hlgf.field import HLGF, new_field
from hlgf.gauge_group import LoopClass, u1


def random_path_word(rng: random.Random, c: SkeletalComplex,
                     max_len: int = 4, start: int | None = None,
                     end: int | None = None) -> gl.GlobeWord:
    """A random edge-walk word; optionally pinned at one or both ends.

    The walk may backtrack, which exercises evaluation on uncancelled
    words.
    """
    edges = c.edges()
    v0 = start if start is not None else rng.choice(c.vertices)
    v = v0
    steps = []
    for _ in range(rng.randint(0, max_len)):
        nbrs = [e for e in edges if v in e]
        e = rng.choice(nbrs)
        sign = 1 if e[1] == v else -1
        steps.append((e, sign))
        v = e[0] if sign == 1 else e[1]
    if end is not None and v != end:
        steps += _bridge_steps(c, v, end)
    word = gl.word_from_path((v0, tuple(steps)))
    if rng.random() < 0.3:
        word = gl.invert(gl.invert(word, 0), 0)
    return word


def _walk_start(steps) -> int:
    e, s = steps[0]
    return e[1] if s == 1 else e[0]


def _bridge_steps(c: SkeletalComplex, a: int, b: int):
    """Shortest edge walk from a to b."""
    if a == b:
        return []
    frontier = {a: []}
    seen = {a}
    while frontier:
        nxt = {}
        for v, path in sorted(frontier.items()):
            for e in c.edges():
                if v not in e:
                    continue
                other = e[0] if e[1] == v else e[1]
                if other in seen:
                    continue
                step = (e, 1 if e[1] == v else -1)
                if other == b:
                    return path + [step]
                nxt[other] = path + [step]
                seen.add(other)
        frontier = nxt
    raise ValueError(f"no path from {a} to {b}")


def _word_source_vertex(w: gl.GlobeWord) -> int:
    v = w
    while not isinstance(v, gl.Vertex):
        v = gl.face(v, 0, -1)
    return v.v


def _word_target_vertex(w: gl.GlobeWord) -> int:
    v = w
    while not isinstance(v, gl.Vertex):
        v = gl.face(v, 0, 1)
    return v.v


def _seed_2word(rng: random.Random, c: SkeletalComplex) -> gl.GlobeWord:
    kind = rng.randrange(5)
    if kind == 0:
        return gl.Gen(rng.choice(c.faces()))
    if kind == 1:
        return gl.invert(gl.Gen(rng.choice(c.faces())), rng.randrange(2))
    if kind == 2:
        return gl.degenerate(random_path_word(rng, c), 1, 2)
    if kind == 3:
        return gl.degenerate(gl.Vertex(rng.choice(c.vertices)), 0, 2)
    return gl.invert(gl.invert(gl.Gen(rng.choice(c.faces())),
                               rng.randrange(2)), rng.randrange(2))


def _stack_word(rng: random.Random, c: SkeletalComplex,
                path: gl.ReducedPath, above: bool) -> gl.GlobeWord:
    """A 2-word whose level-1 source (above) or target (below) reduces to
    the given path."""
    faces = list(c.faces())
    rng.shuffle(faces)
    candidates = []
    for s in faces:
        for sign in (1, -1):
            for new_path, step in gl._push_moves(path, s, sign):
                candidates.append(step if above else gl.invert(step, 1))
                break
    if candidates and rng.random() < 0.8:
        return rng.choice(candidates)
    return gl.degenerate(gl.word_from_path(path), 1, 2)


def random_2word(rng: random.Random, c: SkeletalComplex,
                 depth: int = 3) -> gl.GlobeWord:
    w = _seed_2word(rng, c)
    for _ in range(rng.randint(0, depth)):
        op = rng.randrange(5)
        if op == 0:
            w = gl.invert(w, 0)
        elif op == 1:
            w = gl.invert(w, 1)
        elif op == 2:
            # glue a word ending where w starts
            v = _word_source_vertex(w)
            other = _seed_2word(rng, c)
            bridge = _bridge_steps(c, _word_target_vertex(other), v)
            if bridge:
                other = gl.compose(
                    gl.degenerate(gl.word_from_path(
                        (_word_target_vertex(other), tuple(bridge))), 1, 2),
                    other, 0)
            w = gl.compose(w, other, 0)
        elif op == 3:
            step = _stack_word(rng, c, gl.reduced_path(gl.face(w, 1, 1)),
                               above=True)
            w = gl.compose(step, w, 1)
        else:
            step = _stack_word(rng, c, gl.reduced_path(gl.face(w, 1, -1)),
                               above=False)
            w = gl.compose(w, step, 1)
    return w


def composable_pair(rng: random.Random, c: SkeletalComplex, level: int):
    """Two 2-words composable at the given level."""
    b = random_2word(rng, c, depth=2)
    if level == 0:
        v = _word_target_vertex(b)
        a = random_2word(rng, c, depth=2)
        bridge = _bridge_steps(c, v, _word_source_vertex(a))
        if bridge:
            a = gl.compose(a, gl.degenerate(
                gl.word_from_path((v, tuple(bridge))), 1, 2), 0)
        return a, b
    a = _stack_word(rng, c, gl.reduced_path(gl.face(b, 1, 1)), above=True)
    return a, b


def interchange_square(rng: random.Random, c: SkeletalComplex):
    """Words a, b, cc, dd with (a o0 b) o1 (cc o0 dd) and its transpose
    both defined."""
    cc, dd = composable_pair(rng, c, 0)
    a = _stack_word(rng, c, gl.reduced_path(gl.face(cc, 1, 1)), above=True)
    b = _stack_word(rng, c, gl.reduced_path(gl.face(dd, 1, 1)), above=True)
    return a, b, cc, dd


# ---------------------------------------------------------------------------
# dimension-3 words over a 3D base


def _seed_3word(rng: random.Random, c: SkeletalComplex) -> gl.GlobeWord:
    kind = rng.randrange(4)
    if kind == 0:
        return gl.Gen(rng.choice(c.cells3()))
    if kind == 1:
        return gl.invert(gl.Gen(rng.choice(c.cells3())), rng.randrange(3))
    if kind == 2:
        return gl.degenerate(random_2word(rng, c, depth=1), 2, 3)
    return gl.degenerate(random_path_word(rng, c), 1, 3)


def random_3word(rng: random.Random, c: SkeletalComplex,
                 depth: int = 2) -> gl.GlobeWord:
    w = _seed_3word(rng, c)
    for _ in range(rng.randint(0, depth)):
        op = rng.randrange(4)
        if op == 0:
            w = gl.invert(w, rng.randrange(3))
        elif op == 1:
            v = _word_source_vertex(w)
            u = rng.choice(c.vertices)
            bridge = _bridge_steps(c, u, v)
            other = gl.degenerate(
                gl.word_from_path((u, tuple(bridge))), 1, 3)
            w = gl.compose(w, other, 0)
        elif op == 2:
            lid = gl.degenerate(gl.word_from_path(
                gl.reduced_path(gl.face(w, 1, 1))), 1, 3)
            w = gl.compose(lid, w, 1)
        else:
            w = gl.compose(gl.invert(w, 2), w, 2)
    return w


# ---------------------------------------------------------------------------
# fields with exactly-consistent higher data


def coboundary_field(c: SkeletalComplex, seed: int) -> HLGF:
    """A U1 field whose face lifts are the exact coboundary of a random
    edge cochain; every tetrahedron condition then holds identically."""
    rng = random.Random(seed)
    y = {e: rng.uniform(-math.pi, math.pi) for e in c.edges()}
    edges = {e: u1(y[e]) for e in c.edges()}
    faces = {}
    for (i, j, k) in c.faces():
        lift = -y[(i, j)] + y[(i, k)] - y[(j, k)]
        faces[(i, j, k)] = LoopClass("U1", theta0=y[(j, k)], lift=lift)
    cells = None
    if c.dim >= 3:
        probe = HLGF(c, "U1", edges, faces, None)
        from hlgf.field import _cell_from_faces
        cells = {t: _cell_from_faces(probe, t) for t in c.cells3()}
    return new_field(c, "U1", edges, faces, cells)


def exact_so3_field(c: SkeletalComplex, seed: int) -> HLGF:
    """An SO3 field lifted from honest SU(2) edge data; faces continue the
    edge products exactly, so all consistency conditions hold."""
    rng = random.Random(seed)
    q = {e: gg.haar_element("SU2", rng).quat for e in c.edges()}
    edges = {e: gg.quat_element("SO3", q[e]) for e in c.edges()}
    faces = {}
    for (i, j, k) in c.faces():
        q1 = gg.qmul(gg.qconj(q[(i, j)]), q[(i, k)])
        faces[(i, j, k)] = LoopClass("SO3", q0=q[(j, k)], q1=q1)
    cells = None
    if c.dim >= 3:
        probe = HLGF(c, "SO3", edges, faces, None)
        from hlgf.field import _cell_from_faces
        cells = {t: _cell_from_faces(probe, t) for t in c.cells3()}
    return new_field(c, "SO3", edges, faces, cells)
