from qvertex import indices as ix


def test_lift_drop_roundtrip():
    for i in ix.basis(3, 4):
        lifted = ix.lift(i, 4)
        assert len(lifted) == 3
        assert sum(lifted) == 4
        assert ix.drop(lifted) == i


def test_basis_size_is_binomial():
    from math import comb

    for n in (2, 3, 4):
        for w in range(5):
            assert len(ix.basis(n, w)) == comb(w + n - 1, n - 1)


def test_pair_dot_matches_lifted_dot():
    for i in ix.basis(3, 2):
        for j in ix.basis(3, 3):
            assert ix.pair_dot(i, j, 2, 3) == ix.dot(ix.lift(i, 2), ix.lift(j, 3))


def test_bar_is_lifted_cycle():
    for i in ix.basis(4, 3):
        assert ix.bar(i, 3) == ix.drop(ix.cyc(ix.lift(i, 3)))


def test_sector_splits_cover_sector():
    t = (2, 1)
    got = set(ix.sector_splits(t, 2, 2))
    expect = set()
    for i in ix.basis(3, 2):
        for j in ix.basis(3, 2):
            if ix.vec_add(i, j) == t:
                expect.add((i, j))
    assert got == expect


def test_boxes():
    assert set(ix.boxes((2, 1), (1, 3))) == {(a, b) for a in range(2) for b in range(2)}
