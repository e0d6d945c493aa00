"""Smoke test for the `freedyn` extension module.

Build and run from the repository root:

    cargo build -p freedyn-python --release
    cp target/release/libfreedyn_py.so python/freedyn.so
    python3 python/smoke_test.py
"""

import freedyn

PHI1 = """\
alphabet: a b c d
map a -> a
map b -> b a
map c -> c a^2
map d -> d c
inv a -> a
inv b -> b a^-1
inv c -> c a^-2
inv d -> d a^2 c^-1
fix: a; b a b^-1; c a c^-1
"""


def main():
    phi = freedyn.Automorphism.from_spec("phi_k:k=1")
    assert phi.alphabet == ["a", "b", "c", "d"]
    assert phi.iterate("b d^-1", 2) == "b c^-2 d^-1"
    assert phi.iterate("b d^-1", -3) == "b a^-3 c a^-6 c a^-4 c a^-2 d^-1"

    from_file = freedyn.Automorphism.from_text(PHI1)
    assert from_file.iterate("b d^-1", 4) == phi.iterate("b d^-1", 4)

    limit = phi.omega("c")
    assert (limit["kind"], limit["head"], limit["period"]) == ("rational", "c", "a")
    assert phi.omega("a")["kind"] == "fixed-element"

    report = phi.parabolic("b d^-1")
    assert report["verdict"] == "parabolic", report
    assert report["point"]["text"] == "b (a^-1)^inf"
    assert phi.parabolic("d")["verdict"] == "not-parabolic"

    assert phi.abelianize(2)[0] == [1, 2, 4, 2]
    assert phi.growth("d")["class"] == "polynomial"

    dot, graph = phi.graph()
    assert dot.startswith("digraph dynamics {")
    assert len(graph["vertices"]) == 8 and len(graph["edges"]) == 7
    assert graph["parabolic_loop"] == "b (a^-1)^inf"

    assert freedyn.reduce_word("a b b^-1 c", 3) == "a c"
    assert freedyn.classify_twist(3, 1) == "semi-north-south"
    assert freedyn.twist_reduce("a^3", 2) == ("", 3)
    assert freedyn.twist_reduce("b", 1, 3) is None

    try:
        freedyn.Automorphism.from_text(PHI1.replace("inv b -> b a^-1", "inv b -> b a"))
    except ValueError as e:
        assert "inverse" in str(e), e
    else:
        raise AssertionError("a wrong inverse was accepted")

    print("freedyn smoke test passed")


if __name__ == "__main__":
    main()
