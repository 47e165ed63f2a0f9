import itertools

import pytest

from hlgf.complexes import (BUILTIN_NAMES, ComplexError, SkeletalComplex,
                            build_builtin, from_json_dict, oriented_faces,
                            validate)

REFERENCE_FACES = {(1, 2, 4), (2, 3, 4), (1, 3, 4),
                   (1, 2, 5), (2, 3, 5), (1, 3, 5)}


def test_five_vertex_shape(five):
    assert five.dim == 2
    assert five.vertices == (1, 2, 3, 4, 5)
    assert len(five.edges()) == 9
    assert set(five.faces()) == REFERENCE_FACES
    assert validate(five).ok()


def test_tetra_shape(tetra):
    assert set(tetra.faces()) == {(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)}
    assert len(tetra.edges()) == 6
    assert validate(tetra).ok()


def test_pentachoron_shape(penta):
    assert penta.dim == 3
    assert len(penta.cells3()) == 5
    assert len(penta.faces()) == 10
    assert len(penta.edges()) == 10
    assert validate(penta).ok()


def test_pentachoron_face_incidence(penta):
    # independent enumeration: triangles of 4-subsets of {1..5}
    counts = {}
    for t in itertools.combinations(range(1, 6), 4):
        for tri in itertools.combinations(t, 3):
            counts[tri] = counts.get(tri, 0) + 1
    assert set(counts) == set(penta.faces())
    assert all(n == 2 for n in counts.values())


def test_builtin_determinism():
    for name in BUILTIN_NAMES:
        a = build_builtin(name)
        b = build_builtin(name)
        assert a.simplices == b.simplices
        assert a.orientation == b.orientation


def test_unknown_builtin():
    with pytest.raises(ComplexError):
        build_builtin("klein_bottle")


def test_closure_violation():
    c = SkeletalComplex("broken", 2, {
        1: [(1, 4), (2, 4)],           # edge (1,2) missing
        2: [(1, 2, 4)],
    })
    report = validate(c)
    assert not report.ok()
    assert (1, 2) in report.closure


def test_ordering_violation():
    with pytest.raises(ComplexError):
        # constructor rejects ids out of order indirectly via validate;
        # duplicated vertices are length errors
        SkeletalComplex("bad", 1, {1: [(2, 2)]})
    c = SkeletalComplex("bad2", 1, {1: [(2, 1)]})
    assert (2, 1) in validate(c).ordering


def test_orientation_incoherence():
    faces = [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)]
    edges = sorted({e for f in faces for e in itertools.combinations(f, 2)})
    c = SkeletalComplex("tetra_bad", 2, {1: edges, 2: faces},
                        {f: 1 for f in faces})
    report = validate(c)
    assert report.orientation     # at least one incoherent edge


def test_oriented_faces_reference_signs(five):
    signs = {of.face: of.sign for of in oriented_faces(five)}
    assert signs == {(1, 2, 4): 1, (2, 3, 4): 1, (1, 3, 4): -1,
                     (1, 2, 5): -1, (2, 3, 5): -1, (1, 3, 5): 1}


def test_tetra_orientation_unique_up_to_flip(tetra):
    # exhaustive search over the 2^4 assignments
    faces = tetra.faces()
    edges = tetra.edges()
    coherent = []
    for signs in itertools.product((1, -1), repeat=4):
        assignment = dict(zip(faces, signs))
        c = SkeletalComplex("probe", 2, {1: edges, 2: faces}, assignment)
        if validate(c).ok():
            coherent.append(signs)
    assert len(coherent) == 2
    assert coherent[0] == tuple(-s for s in coherent[1])
    assert tuple(tetra.orientation[f] for f in faces) in coherent


def test_oriented_faces_errors(penta):
    with pytest.raises(ComplexError):
        oriented_faces(penta)
    line = SkeletalComplex("line", 1, {1: [(1, 2), (2, 3)]})
    with pytest.raises(ComplexError):
        oriented_faces(line)


def test_json_roundtrip(five, penta):
    for c in (five, penta):
        c2 = from_json_dict(c.to_json_dict())
        assert c2.simplices == c.simplices
        assert c2.orientation == c.orientation
        assert c2.name == c.name
