"""Smoke tests for the python module: the bindings surface the same JSON
documents and values the CLI produces."""

import json

import pytest

import vsg

THETA = json.dumps(
    {
        "version": 1,
        "vertices": ["u", "v"],
        "edges": [
            {"id": "e1", "tail": "u", "head": "v"},
            {"id": "e2", "tail": "u", "head": "v"},
            {"id": "e3", "tail": "u", "head": "v"},
        ],
        "rotations": {
            "u": [["e1", "tail"], ["e2", "tail"], ["e3", "tail"]],
            "v": [["e3", "head"], ["e2", "head"], ["e1", "head"]],
        },
        "passages": {"e1": [], "e2": [], "e3": []},
    }
)

KINK = json.dumps(
    {
        "version": 1,
        "vertices": ["v"],
        "edges": [{"id": "e", "tail": "v", "head": "v"}],
        "rotations": {"v": [["e", "tail"], ["e", "head"]]},
        "passages": {
            "e": [
                {"x": "c1", "role": "o", "sign": "+"},
                {"x": "c1", "role": "u", "sign": "+"},
            ]
        },
    }
)

UNKNOT = json.dumps(
    {
        "version": 1,
        "vertices": ["v"],
        "edges": [{"id": "e", "tail": "v", "head": "v"}],
        "rotations": {"v": [["e", "tail"], ["e", "head"]]},
        "passages": {"e": []},
    }
)


def test_validate_and_canonical_round_trip():
    ok, violations = vsg.validate(THETA)
    assert ok and violations == []
    c = vsg.canonical(THETA)
    assert vsg.canonical(c) == c


def test_validate_reports_violations():
    broken = json.loads(UNKNOT)
    broken["passages"]["e"] = [{"x": "c1", "role": "o", "sign": "+"}]
    ok, violations = vsg.validate(json.dumps(broken))
    assert not ok
    assert any(rule == "unpaired-crossing" for rule, _ in violations)


def test_yamada_theta_value():
    assert vsg.yamada(THETA) == "-1*A^2-1*A^1-2*A^0-1*A^-1-1*A^-2"
    assert vsg.yamada(KINK, normalized=True) == "-1*A^2-1*A^1-1*A^0"


def test_realize_extract_round_trip():
    diagram = vsg.realize(THETA)
    assert vsg.canonical(vsg.extract_code(diagram)) == vsg.canonical(THETA)
    svg = vsg.render_svg(KINK)
    assert svg.startswith("<svg") and 'class="under-gap"' in svg


def test_group_and_homs():
    info = vsg.group(THETA)
    assert info["free_rank"] == 2 and info["torsion"] == []
    s3 = {
        "elements": ["e", "a", "b", "ab", "ba", "aba"],
        "table": [
            [0, 1, 2, 3, 4, 5],
            [1, 0, 3, 2, 5, 4],
            [2, 4, 0, 5, 1, 3],
            [3, 5, 1, 4, 0, 2],
            [4, 2, 5, 0, 3, 1],
            [5, 3, 4, 1, 2, 0],
        ],
    }
    assert vsg.count_homs(THETA, json.dumps(s3)) == 36


def test_quandle_colorings():
    assert vsg.count_colorings(UNKNOT, vsg.dihedral_vqs(3)) == 3


def test_moves_and_search():
    sites = [json.loads(s) for s in vsg.enumerate_moves(KINK, with_insertions=False)]
    assert any(s["move"] == "I" and s["dir"] == "delete" for s in sites)
    verdict = vsg.search_equivalent(KINK, UNKNOT, max_crossings=3, max_states=1000)
    assert verdict["equivalent"]
    witness = json.loads(verdict["witness"])
    assert len(witness) == 1

    with pytest.raises(vsg.PolicyError):
        vsg.apply_move(
            KINK,
            json.dumps({"move": "VIII*", "dir": "apply", "edge": "e", "pos": 0}),
            moveset="rigid",
        )


def test_tg_and_link_invariants():
    links = vsg.tg(THETA)
    assert len(links) == 9
    assert vsg.f_poly(json.dumps({"version": 1, "components": [{"anchor": 0, "passages": []}]})) == "1*A^0"


def test_budget_errors_surface():
    with pytest.raises(vsg.BudgetError):
        vsg.yamada(KINK, max_crossings=0)
