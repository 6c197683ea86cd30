#!/usr/bin/env python3
"""Writes the bundled instances into corpus/ and the negative fixtures into tests/data/."""
import json
import pathlib
import sys

ROOT = pathlib.Path(__file__).resolve().parent.parent


def flat(v):
    if isinstance(v, list):
        return all(not isinstance(e, (list, dict)) or
                   (isinstance(e, list) and all(not isinstance(x, (list, dict)) for x in e)) for e in v)
    if isinstance(v, dict):
        return all(not isinstance(e, (list, dict)) for e in v.values())
    return True


def inline(v):
    if isinstance(v, list):
        return "[" + ", ".join(inline(e) for e in v) + "]"
    if isinstance(v, dict):
        return "{" + ", ".join(json.dumps(k) + ": " + inline(e) for k, e in v.items()) + "}"
    return json.dumps(v, ensure_ascii=False)


def pretty(v, indent=0):
    if flat(v) or len(v) == 0:
        return inline(v)
    pad = " " * (indent + 2)
    if isinstance(v, list):
        body = ",\n".join(pad + pretty(e, indent + 2) for e in v)
        return "[\n" + body + "\n" + " " * indent + "]"
    body = ",\n".join(pad + json.dumps(k) + ": " + pretty(e, indent + 2) for k, e in v.items())
    return "{\n" + body + "\n" + " " * indent + "}"


def write(path, obj):
    path.write_text(pretty(obj) + "\n")


def octahedron():
    eq = [f"E{i}" for i in range(4)]
    tris = [[pole, eq[i], eq[(i + 1) % 4]] for pole in ("N", "S") for i in range(4)]
    return ["N", "S"] + eq, tris


def suspension(n):
    eq = [f"E{i}" for i in range(n)]
    tris = [[pole, eq[i], eq[(i + 1) % n]] for pole in ("N", "S") for i in range(n)]
    return ["N", "S"] + eq, tris


def rotate_equator(n, step):
    return [0, 1] + [2 + (i + step) % n for i in range(n)]


def heart_morse(flip_gqr=False, tau_r=-1):
    return {
        "ambient_dim": 2,
        "self_indexing": True,
        "group": {"degree": 2, "generators": [
            {"perm": [1, 0], "points": [1, 0, 2, 3], "flows": [1, 0, 3, 2], "tau": [1, 1, tau_r, 1]}]},
        "crit_points": [
            {"label": "p", "index": 2, "value": "2"},
            {"label": "q", "index": 2, "value": "2"},
            {"label": "r", "index": 1, "value": "1"},
            {"label": "s", "index": 0, "value": "0"}],
        "flows": [
            {"label": "gamma_pr", "src": "p", "dst": "r", "sign": 1},
            {"label": "gamma_qr", "src": "q", "dst": "r", "sign": 1 if flip_gqr else -1},
            {"label": "delta_1", "src": "r", "dst": "s", "sign": 1},
            {"label": "delta_2", "src": "r", "dst": "s", "sign": -1}],
    }


def comparison(name, description, morse, vertices, simplices, generators, betti):
    tri = {"vertices": vertices, "simplices": simplices}
    if generators:
        tri["generators"] = generators
    return {"kind": "comparison", "name": name, "description": description,
            "morse": morse, "triangulation": tri,
            "expect": {"betti": betti, "quotient_betti": betti}}


def corpus():
    out = {}
    verts, tris = octahedron()
    out["heart"] = comparison(
        "heart", "Heart-shaped sphere, two maxima swapped by a rotation; the saddle is non-orientable",
        heart_morse(), verts, tris, [rotate_equator(4, 2)], [1, 0, 1])

    out["heart_naive"] = {
        "kind": "intrinsic", "name": "heart_naive",
        "description": "Heart quotient keeping the saddle as a generator; homology is wrong",
        "ambient_dim": 2,
        "crit_points": [
            {"label": "p", "index": 2, "iso_order": 1},
            {"label": "r", "index": 1, "iso_order": 2},
            {"label": "s", "index": 0, "iso_order": 2}],
        "flows": [],
        "expect": {"betti": [1, 1, 1]}}

    for p in (2, 3, 5):
        verts, tris = suspension(2 * p)
        morse = {
            "ambient_dim": 2, "self_indexing": True,
            "group": {"degree": p, "generators": [
                {"perm": [(i + 1) % p for i in range(p)], "points": [0, 1], "flows": [], "tau": [1, 1]}]},
            "crit_points": [{"label": "N", "index": 2, "value": "2"}, {"label": "S", "index": 0, "value": "0"}],
            "flows": []}
        out[f"football_p{p}"] = comparison(
            f"football_p{p}", f"Sphere with cone points of order {p} at both poles",
            morse, verts, tris, [rotate_equator(2 * p, 2)], [1, 0, 1])

    verts, tris = octahedron()
    morse = {
        "ambient_dim": 2, "self_indexing": True,
        "group": {"degree": 1, "generators": []},
        "crit_points": [{"label": "N", "index": 2, "value": "2"}, {"label": "S", "index": 0, "value": "0"}],
        "flows": []}
    out["sphere_trivial"] = comparison("sphere_trivial", "Round sphere, trivial group",
                                       morse, verts, tris, [], [1, 0, 1])

    tv = [f"v{i}{j}" for i in range(3) for j in range(3)]
    idx = lambda i, j: f"v{i % 3}{j % 3}"
    ttris = []
    for i in range(3):
        for j in range(3):
            ttris.append([idx(i, j), idx(i + 1, j), idx(i + 1, j + 1)])
            ttris.append([idx(i, j), idx(i, j + 1), idx(i + 1, j + 1)])
    inv = [((-i) % 3) * 3 + (-j) % 3 for i in range(3) for j in range(3)]
    morse = {
        "ambient_dim": 2,
        "group": {"degree": 2, "generators": [
            {"perm": [1, 0], "points": [0, 1, 2, 3], "flows": [1, 0, 3, 2, 5, 4, 7, 6], "tau": [1, -1, -1, 1]}]},
        "crit_points": [
            {"label": "p", "index": 2, "value": "2"},
            {"label": "q", "index": 1, "value": "0"},
            {"label": "r", "index": 1, "value": "0"},
            {"label": "s", "index": 0, "value": "-2"}],
        "flows": [
            {"label": "a", "src": "p", "dst": "q", "sign": 1},
            {"label": "b", "src": "p", "dst": "q", "sign": -1},
            {"label": "c", "src": "p", "dst": "r", "sign": 1},
            {"label": "d", "src": "p", "dst": "r", "sign": -1},
            {"label": "e", "src": "q", "dst": "s", "sign": 1},
            {"label": "f", "src": "q", "dst": "s", "sign": -1},
            {"label": "g", "src": "r", "dst": "s", "sign": 1},
            {"label": "h", "src": "r", "dst": "s", "sign": -1}]}
    out["torus_z2"] = comparison("torus_z2", "Torus under the involution with four fixed points; the quotient is a sphere",
                                 morse, tv, ttris, [inv], [1, 0, 1])

    verts, tris = octahedron()
    morse = {
        "ambient_dim": 2, "self_indexing": True,
        "group": {"degree": 2, "generators": [
            {"perm": [1, 0], "points": [0, 2, 1, 3, 5, 4], "flows": [2, 3, 0, 1, 5, 4, 7, 6],
             "tau": [1, 1, 1, 1, 1, 1]}]},
        "crit_points": [
            {"label": "N", "index": 2, "value": "2"},
            {"label": "a", "index": 1, "value": "1"},
            {"label": "ga", "index": 1, "value": "1"},
            {"label": "S", "index": 0, "value": "0"},
            {"label": "c", "index": 0, "value": "0"},
            {"label": "gc", "index": 0, "value": "0"}],
        "flows": [
            {"label": "na_1", "src": "N", "dst": "a", "sign": 1},
            {"label": "na_2", "src": "N", "dst": "a", "sign": -1},
            {"label": "nga_1", "src": "N", "dst": "ga", "sign": 1},
            {"label": "nga_2", "src": "N", "dst": "ga", "sign": -1},
            {"label": "a_s", "src": "a", "dst": "S", "sign": -1},
            {"label": "ga_s", "src": "ga", "dst": "S", "sign": -1},
            {"label": "a_c", "src": "a", "dst": "c", "sign": 1},
            {"label": "ga_gc", "src": "ga", "dst": "gc", "sign": 1}]}
    out["sphere_z2_minima"] = comparison(
        "sphere_z2_minima", "Sphere rotated by a half turn with a free pair of saddles and of minima",
        morse, verts, tris, [rotate_equator(4, 2)], [1, 0, 1])

    out["weighted_mixed"] = {
        "kind": "intrinsic", "name": "weighted_mixed",
        "description": "Acyclic intrinsic complex with mixed isotropy orders",
        "ambient_dim": 2,
        "crit_points": [
            {"label": "p", "index": 2, "iso_order": 2},
            {"label": "q1", "index": 1, "iso_order": 4},
            {"label": "q2", "index": 1, "iso_order": 2},
            {"label": "r", "index": 0, "iso_order": 4}],
        "flows": [
            {"label": "p_q1", "src": "p", "dst": "q1", "iso_order": 2, "sign": 1},
            {"label": "q1_r", "src": "q1", "dst": "r", "iso_order": 4, "sign": 1},
            {"label": "p_q2", "src": "p", "dst": "q2", "iso_order": 2, "sign": -1},
            {"label": "q2_r", "src": "q2", "dst": "r", "iso_order": 2, "sign": 1}],
        "expect": {"betti": [0, 0, 0]}}

    for k in (2, 3, 4):
        n = 2 * k
        rim = [f"v{i}" for i in range(n)]
        out[f"disc_rot_{k}"] = {
            "kind": "simplicial", "name": f"disc_rot_{k}",
            "description": f"Disc rel boundary under rotation of order {k}",
            "vertices": ["c"] + rim,
            "simplices": [["c", rim[i], rim[(i + 1) % n]] for i in range(n)],
            "subcomplex": [[rim[i], rim[(i + 1) % n]] for i in range(n)],
            "generators": [[0] + [1 + (i + 2) % n for i in range(n)]],
            "expect": {"betti": [0, 0, 1], "quotient_betti": [0, 0, 1]}}

    rim = [f"v{i}" for i in range(4)]
    out["disc_reflect"] = {
        "kind": "simplicial", "name": "disc_reflect",
        "description": "Disc rel boundary under a reflection",
        "vertices": ["c"] + rim,
        "simplices": [["c", rim[i], rim[(i + 1) % 4]] for i in range(4)],
        "subcomplex": [[rim[i], rim[(i + 1) % 4]] for i in range(4)],
        "generators": [[0, 1, 4, 3, 2]],
        "expect": {"betti": [0, 0, 1], "quotient_betti": [0, 0, 0]}}

    out["interval_reflect"] = {
        "kind": "simplicial", "name": "interval_reflect",
        "description": "Interval rel endpoints under the flip",
        "vertices": ["a", "m", "b"],
        "simplices": [["a", "m"], ["m", "b"]],
        "subcomplex": [["a"], ["b"]],
        "generators": [[2, 1, 0]],
        "expect": {"betti": [0, 1], "quotient_betti": [0, 0]}}
    return out


def fixtures():
    out = {}
    gq = lambda name, desc, morse, valid: dict(
        {"kind": "global_quotient", "name": name, "description": desc}, **morse, expect={"valid": valid})
    out["heart_flipped_sign"] = gq("heart_flipped_sign", "Heart with the sign of gamma_qr flipped",
                                   heart_morse(flip_gqr=True), False)
    out["heart_tau_saddle"] = gq("heart_tau_saddle", "Heart with tau(g, r) = +1",
                                 heart_morse(tau_r=1), False)
    out["heart_global"] = dict(gq("heart_global", "Heart system alone", heart_morse(), True),
                               expect={"betti": [1, 0, 1], "valid": True})
    trivial = heart_morse()
    trivial["group"] = {"degree": 1, "generators": []}
    out["heart_trivial_group"] = dict(gq("heart_trivial_group", "Heart manifold data with the trivial group",
                                         trivial, True), expect={"betti": [1, 0, 1], "valid": True})
    out["d_squared_failure"] = {
        "kind": "intrinsic", "name": "d_squared_failure",
        "description": "Three levels with one flow per step, so dd is not zero",
        "ambient_dim": 2,
        "crit_points": [
            {"label": "p", "index": 2, "iso_order": 1},
            {"label": "q", "index": 1, "iso_order": 1},
            {"label": "r", "index": 0, "iso_order": 1}],
        "flows": [
            {"label": "pq", "src": "p", "dst": "q", "iso_order": 1, "sign": 1},
            {"label": "qr", "src": "q", "dst": "r", "iso_order": 1, "sign": 1}],
        "expect": {"valid": False}}
    dangling = heart_morse()
    dangling["flows"][2]["dst"] = "t"
    out["dangling_endpoint"] = gq("dangling_endpoint", "Flow into an undeclared point", dangling, False)
    return out


def main():
    corpus_dir = ROOT / "corpus"
    data_dir = ROOT / "tests" / "data"
    corpus_dir.mkdir(exist_ok=True)
    data_dir.mkdir(parents=True, exist_ok=True)
    for name, obj in corpus().items():
        write(corpus_dir / f"{name}.json", obj)
    for name, obj in fixtures().items():
        write(data_dir / f"{name}.json", obj)
    (data_dir / "malformed.json").write_text('{\n  "kind": "intrinsic",\n  "name": "broken"\n  "ambient_dim": 2\n}\n')
    return 0


if __name__ == "__main__":
    sys.exit(main())
