from pathlib import Path

import pytest

import phylonet

DATA = Path(__file__).resolve().parents[2] / "data"


def text(name):
    return (DATA / name).read_text()


def test_containment_regression():
    assert not phylonet.utc(text("cycle_net.txt"), text("cycle_tree.nwk"))
    assert not phylonet.utc(text("cycle_net.txt"), text("cycle_tree.nwk"), kernel=True)


def test_containment_certificate():
    img = phylonet.utc_certificate(text("example_unrooted_net.txt"), text("example_pair.nwk"))
    assert img is not None and len(img) > 0


def test_three_numbers():
    value, blocks, net = phylonet.uhn(text("example_pair.nwk"))
    assert value == 1
    assert len(blocks) == 2
    assert net.startswith("unrooted-network")
    assert phylonet.ruhn(text("example_pair.nwk"), 3)[0] == 2
    assert phylonet.ruhn(text("example_pair.nwk"), 1) is None
    assert phylonet.tbr_distance(text("example_pair.nwk")) == 1


def test_rooted_small():
    assert phylonet.hn("((a,b),c);\n((a,c),b);\n", 2)[0] == 1


def test_generators():
    net, tree = phylonet.ndp_to_utc("s t\npair s t\n")
    assert tree.count(",") == 2
    u1, u2 = phylonet.hn_to_ruhn("((a,b),c);", "((a,c),b);")
    assert "c0" in u1 and "d3" in u2


def test_errors():
    with pytest.raises(ValueError):
        phylonet.utc("unrooted-network\n", "(a,b,c;")
    with pytest.raises(phylonet.GuardExceeded):
        phylonet.tbr_distance("(a,b,(c,(d,(e,(f,(g,h))))));\n(a,c,(b,(e,(d,(g,(f,h))))));\n")
