from cyclokzb.roots import (
    Root,
    all_roots,
    classify,
    conj_representative,
    pair_representatives,
    primitive_upper_half,
)


def test_residue_normalization():
    assert Root(7, 6).k == 1
    assert Root(-1, 6).k == 5
    assert Root(12, 12).k == 0


def test_arithmetic():
    z = Root(1, 6)
    assert z.conj() == Root(5, 6)
    assert z.mul(Root(2, 6)) == Root(3, 6)
    assert z.pow(4) == Root(4, 6)
    assert z.pow(-1) == z.conj()


def test_classify_n12():
    got = {r.k: classify(r) for r in all_roots(12)}
    assert [k for k, c in got.items() if c["is_primitive"]] == [1, 5, 7, 11]
    assert got[2]["order"] == 6
    assert got[3]["order"] == 4
    assert got[6]["order"] == 2
    assert got[0]["order"] == 1
    assert [k for k, c in got.items() if c["upper_half"]] == [1, 2, 3, 4, 5]


def test_self_conjugate_flags():
    assert Root(0, 5).is_self_conjugate
    assert Root(3, 6).is_self_conjugate
    assert not Root(2, 6).is_self_conjugate


def test_pair_representatives_level6():
    reps = pair_representatives(6)
    assert [(r.k, flag) for r, flag in reps] == [(0, True), (1, False), (2, False), (3, True)]


def test_pair_representatives_cover_all_orbits():
    for N in range(1, 16):
        reps = pair_representatives(N)
        seen = set()
        for r, flag in reps:
            assert flag == r.is_self_conjugate
            seen.add(r.k)
            seen.add(r.conj().k)
        assert seen == set(range(N))


def test_conj_representative():
    assert conj_representative(Root(4, 6)) == Root(2, 6)
    assert conj_representative(Root(2, 6)) == Root(2, 6)


def test_primitive_upper_half_degenerate_levels():
    assert primitive_upper_half(1) == [Root(0, 1)]
    assert primitive_upper_half(2) == [Root(1, 2)]


def test_primitive_upper_half_counts():
    # phi(N)/2 representatives for N >= 3
    phi = {3: 2, 4: 2, 5: 4, 6: 2, 7: 6, 8: 4, 9: 6, 12: 4}
    for N, ph in phi.items():
        assert len(primitive_upper_half(N)) == ph // 2
    assert [r.k for r in primitive_upper_half(7)] == [1, 2, 3]
    assert [r.k for r in primitive_upper_half(12)] == [1, 5]
