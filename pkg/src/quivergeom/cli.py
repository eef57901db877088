"""Command-line front end: ingest JSON specs, run computations, write
JSON reports and DOT graphs.

Exit codes: 0 success, 1 validation failure (diagnostics in the report),
2 malformed input.  Reports are deterministic (sorted keys, stable
orderings), so identical inputs give byte-identical files.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import presets
from .calculus import validate_set_calculus
from .errors import QuivergeomError
from .geometry import laplacian_theta, spectrum, t_is_zero
from .groups import build_group, centralizer, conjugacy_classes
from .quivers import Quiver, cayley_digraph, dot_export, hopf_quiver, path_label
from .scalars import format_scalar, parse_scalar


def _write(path, text):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _report(args, payload):
    text = json.dumps(payload, indent=2, sort_keys=True, default=str) + "\n"
    _write(getattr(args, "out", None), text)


def _load_input(args):
    if not getattr(args, "input", None):
        return None
    with open(args.input) as fh:
        return json.load(fh)


def _group_from_args(args, spec):
    if getattr(args, "preset", None):
        return presets.preset(args.preset)["group"]
    if spec is None or "group" not in spec:
        raise ValueError("need --preset or --input with a group spec")
    return build_group(spec["group"])


def cmd_group_info(args):
    spec = _load_input(args)
    G = _group_from_args(args, spec)
    classes = conjugacy_classes(G)
    payload = {
        "order": G.order,
        "labels": list(G.labels),
        "identity": G.labels[G.identity],
        "conjugacy_classes": [sorted(G.labels[g] for g in c.members) for c in classes],
        "centralizers": {G.labels[c.rep]: sorted(G.labels[h] for h in centralizer(G, c.rep)) for c in classes},
    }
    _report(args, payload)
    return 0


def cmd_quiver_build(args):
    spec = _load_input(args)
    if spec is None:
        raise ValueError("quiver-build needs --input")
    G = build_group(spec["group"])
    if "ramification" in spec:
        ram = {G.index(k): v for k, v in spec["ramification"].items()}
        quiver = hopf_quiver(G, ram)
        if "bar" in spec:
            from .quivers import mark_cayley_bar

            quiver = mark_cayley_bar(G, quiver, {G.index(x) for x in spec["bar"]})
    elif "cayley" in spec:
        quiver = cayley_digraph(G, {G.index(x) for x in spec["cayley"]})
    else:
        raise ValueError("quiver spec needs 'ramification' or 'cayley'")
    _report(args, quiver.to_json())
    if getattr(args, "dot", None):
        _write(args.dot, dot_export(quiver))
    return 0


def cmd_calculus_check(args):
    data = presets.preset(args.preset)
    if "calculus" in data and hasattr(data["calculus"], "validate"):
        checks = data["calculus"].validate()
    elif "kcalculus" in data:
        checks = data["kcalculus"].validate()
        checks += data.get("codiff_checks", [])
    else:
        checks = validate_set_calculus(data["calculus"])
    payload = {"preset": args.preset, "checks": [c.to_json() for c in checks]}
    _report(args, payload)
    return 0 if all(c.ok for c in checks) else 1


def cmd_exterior_dims(args):
    from .exterior import omega_vartheta_dim

    data = presets.preset(args.preset)
    degree = args.degree if args.degree is not None else 3
    if "kcalculus" in data:
        dim, basis = omega_vartheta_dim(data["kcalculus"], data.get("vartheta"), degree, with_basis=True)
        quiver = data["kcalculus"].quiver
        from .quivers import paths_of_length

        ambient = len(paths_of_length(quiver, degree)) if degree else len(quiver.vertices)
    else:
        quiver = data["quiver"]
        from .exterior import _omega_dim_set
        from .quivers import paths_of_length

        dim, basis = _omega_dim_set(quiver, None, degree, True)
        ambient = len(paths_of_length(quiver, degree)) if degree else len(quiver.vertices)
    payload = {
        "degree": degree,
        "ambient": ambient,
        "subspace": dim,
        "basis": sorted(str(vec) for vec in basis) if basis is not None else None,
    }
    _report(args, payload)
    return 0


def cmd_metric_check(args):
    data = presets.preset(args.preset)
    met = data["metric"]
    fr = data["frame"]
    pairing = {}
    for (i, j), val in sorted(met.pairing.items()):
        pairing[f"({fr.names[i]},{fr.names[j]})"] = str(val) if not isinstance(val, tuple) else [str(x) for x in val]
    payload = {"preset": args.preset, "frame": list(fr.names), "pairing": pairing, "valid": True}
    _report(args, payload)
    return 0


def _binding(args):
    out = {}
    for item in getattr(args, "bind", None) or []:
        key, _, val = item.partition("=")
        out[key] = parse_scalar(val)
    return out


def cmd_connection_check(args):
    from .geometry import Connection, cotorsion, curvature, flip_sigma, nabla_g, ricci, torsion
    from .scalars import is_zero, subs_partial, variable

    data = presets.preset(args.preset)
    if args.preset != "cs3-4d":
        raise ValueError("connection-check currently reports the cs3-4d family")
    fr = data["frame"]
    met = data["metric"]
    bind = _binding(args)
    lam = bind.get("lam", variable("lam"))
    alpha = {i: {k: lam * c for k, c in row.items()} for i, row in data["alpha_family"].items()}
    conn = Connection(fr, flip_sigma(fr), alpha)
    T = torsion(conn)
    ct = cotorsion(conn, met)
    ng = nabla_g(conn, met)
    R = curvature(conn)
    ric = ricci(conn, met)
    payload = {
        "preset": args.preset,
        "binding": {k: format_scalar(v) for k, v in bind.items()},
        "torsion_zero": all(t_is_zero(fr, T[i]) for i in T),
        "cotorsion_zero": t_is_zero(fr, ct),
        "metric_compatible": t_is_zero(fr, ng),
        "flat": all(t_is_zero(fr, R[i]) for i in R),
        "ricci_zero": t_is_zero(fr, ric),
    }
    _report(args, payload)
    return 0


def cmd_moduli_solve(args):
    from .moduli import UnknownTensor, assemble_cotorsion_free, assemble_invariance, assemble_torsion_free, tau_dim

    data = presets.preset(args.preset)
    fr = data["frame"]
    unk = UnknownTensor(fr)
    wanted = (args.constraints or "torsion").split(",")
    system = assemble_torsion_free(fr, unk)
    if "cotorsion" in wanted:
        system = system.stacked(assemble_cotorsion_free(fr, data["metric"], unk))
    if "ad" in wanted:
        G = data["group"]
        F = Fraction
        P = [[F(c) for c in r] for r in [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]]
        Q = [[F(c) for c in r] for r in [[0, 1, 0, 0], [-1, -1, 1, 1], [0, 0, 1, 0], [0, 0, 0, 1]]]
        system = system.stacked(assemble_invariance(fr, unk, [P, Q]))
    td, ad = tau_dim(system, unk)
    payload = {"preset": args.preset, "constraints": wanted, "tau_dim": td, "alpha_dim": ad}
    payload.update({k: v for k, v in system.report().items() if k != "free_unknowns"})
    _report(args, payload)
    return 0


def cmd_family_verify(args):
    from .geometry import Connection, flip_sigma
    from .moduli import verify_family, z2_lc_family
    from .scalars import variable

    data = presets.preset(args.preset)
    if args.preset == "cs3-4d":
        fr = data["frame"]
        lam = variable("lam")
        alpha = {i: {k: lam * c for k, c in row.items()} for i, row in data["alpha_family"].items()}
        conn = Connection(fr, flip_sigma(fr), alpha)
        rep = verify_family(conn, data["metric"], ("torsion", "cotorsion", "metric_compat", "curvature"))
    elif args.preset == "z2-4arrow":
        from .geometry import FrameMetric

        fr = data["frame"]
        V = variable
        lamm = [[(V("l11e"), V("l11g")), (V("l12e"), V("l12g"))], [(V("l12e"), V("l12g")), (V("l22e"), V("l22g"))]]
        met = FrameMetric(fr, {(0, 0): lamm[0][0], (0, 1): lamm[0][1], (1, 0): lamm[1][0], (1, 1): lamm[1][1]})
        conn = z2_lc_family(fr, lamm, (V("xe"), V("xg")), (V("ye"), V("yg")), (V("ze"), V("zg")), (V("we"), V("wg")))
        rep = verify_family(conn, met, ("torsion", "metric_compat"), avoid=list(conn.bases))
    else:
        raise ValueError("family-verify supports cs3-4d and z2-4arrow")
    payload = {"preset": args.preset, "predicates": rep.to_json()}
    _report(args, payload)
    return 0


def cmd_laplacian(args):
    data = presets.preset(args.preset)
    fr = data["frame"]
    met = data["metric"]
    mat = laplacian_theta(fr, met)
    sp = spectrum(mat)
    labels = list(data["group"].labels)
    payload = {
        "preset": args.preset,
        "basis": labels,
        "matrix": [[str(v) for v in row] for row in mat],
        "spectrum": {str(k): v for k, v in sorted(sp.items(), key=lambda kv: str(kv[0]))},
    }
    _report(args, payload)
    return 0


def cmd_bundle_quotient(args):
    from .bundles import canonical_connection, check_bundle, quotient_quiver

    data = presets.preset(args.preset)
    action = data["action"]
    cbar = set(data["cbar"])
    ok, checks = check_bundle(action, cbar)
    qq, orbits, arrow_orbits = quotient_quiver(action)
    payload = {
        "preset": args.preset,
        "bundle_conditions": [c.to_json() for c in checks],
        "orbits": [[action.quiver.vertices[x] for x in o] for o in orbits],
        "quotient_arrows": len(qq.arrows),
        "quotient_loops": sum(1 for a in qq.arrows if a.source == a.target),
    }
    if ok:
        omega, ver, proj = canonical_connection(action, cbar)
        payload["connection"] = {
            str(data["subgroup"].labels[g]): sorted(path_label(action.quiver, p) for p in coeffs)
            for g, coeffs in omega.items()
        }
    _report(args, payload)
    if getattr(args, "dot", None):
        _write(args.dot, dot_export(qq))
    return 0 if ok else 1


def cmd_export_dot(args):
    spec = _load_input(args)
    if getattr(args, "preset", None):
        data = presets.preset(args.preset)
        quiver = data.get("quiver") or data["kcalculus"].quiver
    elif spec is not None:
        quiver = Quiver.from_json(spec)
    else:
        raise ValueError("export-dot needs --preset or --input")
    _write(getattr(args, "dot", None) or getattr(args, "out", None), dot_export(quiver))
    return 0


_COMMANDS = {
    "group-info": cmd_group_info,
    "quiver-build": cmd_quiver_build,
    "calculus-check": cmd_calculus_check,
    "exterior-dims": cmd_exterior_dims,
    "metric-check": cmd_metric_check,
    "connection-check": cmd_connection_check,
    "moduli-solve": cmd_moduli_solve,
    "family-verify": cmd_family_verify,
    "laplacian": cmd_laplacian,
    "bundle-quotient": cmd_bundle_quotient,
    "export-dot": cmd_export_dot,
}


def build_parser():
    parser = argparse.ArgumentParser(prog="quivergeom", description="Exact quiver noncommutative geometry")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--input", help="JSON input file")
        p.add_argument("--preset", help="named preset", choices=presets.PRESET_NAMES)
        p.add_argument("--degree", type=int, default=None)
        p.add_argument("--bind", action="append", help="parameter binding k=v")
        p.add_argument("--constraints", help="comma list: torsion,cotorsion,ad")
        p.add_argument("--out", help="report output path (default stdout)")
        p.add_argument("--dot", help="DOT output path")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (QuivergeomError,) as ex:
        json.dump({"error": type(ex).__name__, "message": str(ex)}, sys.stdout, indent=2, sort_keys=True)
        sys.stdout.write("\n")
        return 1
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as ex:
        json.dump({"error": type(ex).__name__, "message": str(ex)}, sys.stdout, indent=2, sort_keys=True)
        sys.stdout.write("\n")
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
