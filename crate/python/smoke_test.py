"""Smoke test for the pyk3lat extension module.

Build and copy the module next to this file first:

    cargo build --release -p k3lat-py
    cp target/release/libpyk3lat.so python/pyk3lat.so
"""

import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import pyk3lat as k


def main():
    a2 = k.Lattice([[2, -1], [-1, 2]])
    assert str(a2.symbol()) == "3^-1"
    assert a2.discriminant() == (["3"], ["2/3"])
    assert len(a2.roots()) == 6

    q = k.Fqf("4_3^-1 3^-1 7^-1")
    assert q.order == "84" and q.length == 1
    assert (q + k.Fqf("3^+2")) == k.Fqf("4_3^-1 3^-3 7^-1")
    assert (-k.Fqf("3^+1")) == k.Fqf("3^-1")
    assert k.nikulin_exists(1, 0, k.Fqf("4_5^-1 3^+1 7^-1"))
    assert str(k.n_form(3, 1)) == "3^+2"

    yes = k.primitively_embeds(q, 21, 7)
    no = k.primitively_embeds(q, 21, 3)
    assert yes["embeds"] and not no["embeds"]
    assert yes["witness"]["h_order"] == 7

    d4 = k.RootDatum("D4")
    assert d4.weyl_order() == 192
    gx = dict(d4.named_elements())["gx"]
    assert d4.proot_verdict(3, [gx])["full"]
    pairs = [c for c in d4.classify(3)["classes"] if c["verdict"]["full"]]
    assert len(pairs) == 1

    assert [k.wild_degree_bound(p)["bound"] for p in (11, 7, 5, 3)] == [1, 3, 6, 14]
    report = k.reproduce_table(30)
    assert report["summary"]["passed"] == 67

    try:
        k.Fqf("3^x1")
    except ValueError as e:
        assert "parse error" in str(e)
    else:
        raise AssertionError("bad symbol accepted")

    print("pyk3lat smoke test passed")


if __name__ == "__main__":
    main()
