"""Smoke test for the pyhypersparse extension.

Build and run:
    cargo build --release -p pyhypersparse --features extension-module
    cp target/release/libpyhypersparse.so python/pyhypersparse.so
    python3 python/smoke_test.py
"""

import pyhypersparse as hs


def main():
    k4 = hs.Hypergraph(4, [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]])
    assert (k4.n, k4.m, len(k4)) == (4, 6, 6)
    assert k4.cut_weight([0]) == 3.0
    assert hs.Hypergraph.from_text(k4.to_text()).edges() == k4.edges()
    assert hs.edge_strengths(k4) == [3.0] * 6
    assert abs(hs.effective_resistance(k4, 0, 1) - 0.5) < 1e-12

    oracle = hs.Oracle(k4, seed=1, capabilities="value-edge")
    assert oracle.value([0, 1]) == 4.0
    _, vertices, _ = oracle.edge([0])
    assert 0 in vertices
    try:
        oracle.nbr2(0, 1)
    except ValueError:
        pass
    else:
        raise AssertionError("nbr2 should be refused")

    h = hs.gen_random(8, 150, seed=3)
    for mode, caps in [("cut-edge", "value-edge"), ("cut-nbr2", "value-nbr2")]:
        sparse, queries = hs.sparsify(hs.Oracle(h, 2, caps), mode, 0.5, seed=2)
        report = hs.verify_cut(h, sparse, 0.5)
        assert report["passed"] and report["cuts_checked"] == 127, report
        print(mode, sparse, queries)

    sparse, queries = hs.sparsify(hs.Oracle(h, 2, "value-edge"), "spectral-edge", 0.5, seed=2)
    assert hs.verify_spectral(h, sparse, 0.5, trials=200)["passed"]
    assert queries["nbr2"] == 0
    print("ok")


if __name__ == "__main__":
    main()
