"""Command-line front end. Every subcommand prints exact, deterministic output."""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Callable, Optional, Sequence

from . import chow, ffrep, hall, moduli
from .errors import EmptyModuli, SearchSpaceTooLarge, ValidationError
from .quiver import Quiver, euler_matrix, kronecker_quiver, linear_quiver, path_counts, validate

BUILTIN = {
    "a1": lambda: linear_quiver(1),
    "a2": lambda: linear_quiver(2),
    "a3": lambda: linear_quiver(3),
    "kronecker": kronecker_quiver,
}

V_HEADER = "v^2 = q"


def parse_vector(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise ValidationError(f"expected comma-separated integers, got {text!r}") from None


def parse_partition_tuple(text: str, size: int) -> tuple[tuple[int, ...], ...]:
    """'2,1;1' -> ((2, 1), (1,)). One ';'-separated partition per vertex."""
    parts = text.split(";")
    if len(parts) != size:
        raise ValidationError(f"expected {size} partitions separated by ';', got {text!r}")
    out = []
    for p in parts:
        lam = parse_vector(p)
        if any(x < 0 for x in lam) or list(lam) != sorted(lam, reverse=True):
            raise ValidationError(f"{p!r} is not a partition")
        out.append(tuple(x for x in lam if x))
    return tuple(out)


def load_quiver(name: str) -> Quiver:
    path = Path(name)
    if path.exists():
        return Quiver.load(path)
    if name.lower() in BUILTIN:
        return BUILTIN[name.lower()]()
    raise ValidationError(f"no quiver file {name!r} (builtins: {', '.join(BUILTIN)})")


def fmt_partition(lam) -> str:
    return "(" + ",".join(map(str, lam)) + ")"


def fmt_key(key) -> str:
    return " ".join(fmt_partition(p) for p in key)


def fmt_vec(v) -> str:
    return ",".join(map(str, v))


def scalar_json(c: hall.SqrtQScalar) -> list[str]:
    a, b = c.as_pair()
    return [str(a), str(b)]


class Output:
    """Text lines and a JSON document built side by side."""

    def __init__(self):
        self.lines: list[str] = []
        self.data: dict = {}


# ------------------------------------------------------------------ handlers

def _spec(args) -> moduli.ModuliSpec:
    return moduli.ModuliSpec(args.quiver_obj, _need(args, "d"), _need(args, "n"))


def _need(args, name):
    value = getattr(args, name)
    if value is None:
        raise ValidationError(f"--{name} is required for {args.command}")
    return parse_vector(value)


def cmd_info(args, out: Output):
    q = args.quiver_obj
    order = validate(q)
    em, pc = euler_matrix(q), [list(r) for r in path_counts(q)]
    out.data.update(vertices=list(q.vertices), order=order, euler_matrix=em, path_counts=pc)
    out.lines.append("vertices: " + " ".join(q.vertices))
    out.lines.append("order: " + " ".join(order))
    out.lines.append("euler form:")
    out.lines += ["  " + " ".join(f"{x:>3}" for x in row) for row in em]
    out.lines.append("path counts:")
    out.lines += ["  " + " ".join(f"{x:>3}" for x in row) for row in pc]


def _empty(out: Output):
    out.data["empty"] = True
    out.lines.append("empty")


def cmd_nonempty(args, out: Output):
    ok = moduli.is_nonempty(_spec(args))
    out.data["nonempty"] = ok
    out.lines.append("nonempty" if ok else "empty")


def cmd_dim(args, out: Output):
    value = moduli.dimension(_spec(args))
    out.data["dimension"] = value
    out.lines.append(str(value))


def cmd_poincare(args, out: Output):
    poly = moduli.poincare_polynomial(_spec(args))
    out.data["coefficients"] = list(poly.coeffs)
    out.lines.append(str(poly))


def cmd_betti(args, out: Output):
    b = moduli.betti_numbers(_spec(args))
    out.data["betti"] = b
    out.lines.append(" ".join(map(str, b)))


def cmd_tower(args, out: Output):
    steps = moduli.tower(_spec(args))
    out.data["tower"] = [
        {"vertex": s.vertex, "sub_dim": s.sub_dim, "ambient_rank": s.ambient_rank, "feasible": s.feasible}
        for s in steps
    ]
    for s in steps:
        mark = "" if s.feasible else "  infeasible"
        out.lines.append(f"{s.vertex}: Gr_{s.sub_dim}(rank {s.ambient_rank}){mark}")


def cmd_embed(args, out: Output):
    rows = moduli.ambient_embedding(_spec(args))
    out.data["embedding"] = [{"vertex": v, "sub_dim": d, "ambient_dim": a} for v, d, a in rows]
    out.lines += [f"{v}: Gr_{d}({a})" for v, d, a in rows]


def cmd_chow_basis(args, out: Output):
    basis = moduli.chow_basis(_spec(args), args.degree)
    out.data["basis"] = [[list(p) for p in key] for key in basis]
    out.lines += [fmt_key(key) for key in basis]


def cmd_chow_mul(args, out: Output):
    spec = _spec(args)
    ring = chow.ChowRing(spec)
    size = spec.quiver.size
    if args.a is None or args.b is None:
        raise ValidationError("chow-mul needs --a and --b")
    a = chow.ChowClass.basis(parse_partition_tuple(args.a, size))
    b = chow.ChowClass.basis(parse_partition_tuple(args.b, size))
    for key in (*a.terms, *b.terms):
        if key not in moduli.chow_basis(spec):
            raise ValidationError(f"{fmt_key(key)} is not a basis element of this Chow ring")
    prod = ring.multiply(a, b)
    out.data["product"] = [{"key": [list(p) for p in k], "coeff": str(c)} for k, c in prod.terms.items()]
    if prod.is_zero():
        out.lines.append("0")
    out.lines += [f"{c} * {fmt_key(k)}" for k, c in prod.terms.items()]


def cmd_lr(args, out: Output):
    mu, nu, lam = (parse_vector(x or "") for x in (args.mu, args.nu, args.lam))
    value = chow.lr_coefficient(mu, nu, lam)
    out.data["lr"] = value
    out.lines.append(str(value))


def cmd_count_points(args, out: Output):
    value = ffrep.count_moduli_points(_spec(args), args.q)
    out.data["points"] = value
    out.lines.append(str(value))


def cmd_gr_count(args, out: Output):
    spec = _spec(args)
    x = ffrep.build_injective_sum(spec.quiver, spec.n, args.q)
    value = ffrep.gr_subrep_count(x, spec.d)
    out.data["subreps"] = value
    out.lines.append(str(value))


def cmd_iso_classes(args, out: Output):
    q = args.quiver_obj
    table = ffrep.iso_classes(q, _need(args, "d"), args.q)
    rows = []
    for cid, (rep, size) in enumerate(zip(table.reps, table.sizes)):
        maps = [[list(r) for r in m] for m in rep.maps]
        rows.append({"id": cid, "orbit_size": size, "maps": maps})
        out.lines.append(f"#{cid} size {size} maps {json.dumps(maps, separators=(',', ':'))}")
    out.data["classes"] = rows


def _parse_factor(text: str, quiver: Quiver) -> tuple[tuple[int, ...], int]:
    if ":" not in text:
        raise ValidationError(f"factor {text!r} must look like d:class_id")
    dims, cid = text.rsplit(":", 1)
    return quiver.dimvec(parse_vector(dims)), int(cid)


def _hall_lines(elem, out: Output):
    out.lines.append(V_HEADER)
    if elem.is_zero():
        out.lines.append("0")
    for (d, cid), c in elem.terms.items():
        out.lines.append(f"[{fmt_vec(d)}#{cid}] {c}")
    out.data["terms"] = [{"d": list(d), "class": cid, "coeff": scalar_json(c)} for (d, cid), c in elem.terms.items()]


def cmd_hall_mul(args, out: Output):
    alg = hall.HallAlgebra(args.quiver_obj, args.q)
    if not args.factors:
        raise ValidationError("hall-mul needs at least one factor d:class_id")
    prod = None
    for text in args.factors:
        d, cid = _parse_factor(text, args.quiver_obj)
        f = alg.char(d, cid)
        prod = f if prod is None else prod * f
    _hall_lines(prod, out)


def cmd_serre_check(args, out: Output):
    alg = hall.HallAlgebra(args.quiver_obj, args.q)
    ok = alg.serre_check(args.i, args.j)
    out.data["holds"] = ok
    out.lines.append("true" if ok else "false")


def cmd_eta(args, out: Output):
    q = args.quiver_obj
    alg = hall.HallAlgebra(q, args.q)
    n = q.dimvec(_need(args, "n"))
    d = q.dimvec(_need(args, "d"))
    m = q.dimvec(_need(args, "m"))
    alg.char(m, args.cls)
    xn = hall.XnSpace(q, n, args.q)
    image = hall.eta(hall.ModifiedHallElement.basis(alg, d, m, args.cls), xn)
    out.lines.append(V_HEADER)
    if not image:
        out.lines.append("0")
    for (du, dm, cid), c in image.items():
        out.lines.append(f"O[{fmt_vec(du)}; {fmt_vec(dm)}#{cid}] {c}")
    out.data["terms"] = [
        {"dim_u": list(du), "dim_m": list(dm), "class": cid, "coeff": scalar_json(c)}
        for (du, dm, cid), c in image.items()
    ]


def cmd_eta_kernel(args, out: Output):
    q = args.quiver_obj
    n = q.dimvec(_need(args, "n"))
    labels = hall.modified_labels(q, ffrep.check_prime(args.q), args.max_total)
    kernel = hall.kernel_basis(q, n, args.q, labels)
    out.data["kernel"] = [{"d": list(d), "dim_m": list(m), "class": cid} for d, m, cid in kernel]
    out.data["labels"] = len(labels)
    out.lines += [f"1_[{fmt_vec(d)}] chi[{fmt_vec(m)}#{cid}]" for d, m, cid in kernel]


def cmd_an_orbits(args, out: Output):
    spec = _spec(args)
    count = ffrep.an_orbit_count(spec, args.q)
    classes = len(ffrep.restricted_classes(spec.quiver, spec.d, spec.n, args.q))
    out.data.update(orbits=count, restricted_classes=classes)
    out.lines.append(str(count))


COMMANDS: dict[str, tuple[Callable, str]] = {
    "info": (cmd_info, "Euler form, path counts and canonical vertex order"),
    "nonempty": (cmd_nonempty, "decide whether M_{d,n} is nonempty"),
    "dim": (cmd_dim, "dimension of M_{d,n}"),
    "poincare": (cmd_poincare, "Poincare polynomial in q"),
    "betti": (cmd_betti, "Betti numbers in even degrees"),
    "tower": (cmd_tower, "iterated Grassmann bundle tower"),
    "embed": (cmd_embed, "embedding into a product of Grassmannians"),
    "chow-basis": (cmd_chow_basis, "partition-tuple basis of the Chow ring"),
    "chow-mul": (cmd_chow_mul, "product of two Schur basis classes"),
    "lr": (cmd_lr, "Littlewood-Richardson coefficient"),
    "count-points": (cmd_count_points, "|M_{d,n}(F_q)| by brute force"),
    "gr-count": (cmd_gr_count, "subrepresentations of I(x)V of dimension d"),
    "iso-classes": (cmd_iso_classes, "isomorphism classes in R_d(F_q)"),
    "hall-mul": (cmd_hall_mul, "product of characteristic functions in the Hall algebra"),
    "serre-check": (cmd_serre_check, "quantum Serre relation between two vertices"),
    "eta": (cmd_eta, "image of 1_d chi_[M] in the X_n convolution algebra"),
    "eta-kernel": (cmd_eta_kernel, "labels 1_d chi_[M] in the kernel of eta"),
    "an-orbits": (cmd_an_orbits, "A_n-orbits on M_{d,n}(F_q)"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--quiver", default=None, help="quiver JSON file, or one of: " + ", ".join(BUILTIN))
    common.add_argument("--d", default=None, help="dimension vector, e.g. 1,1")
    common.add_argument("--n", default=None, help="framing vector, e.g. 1,1")
    common.add_argument("--q", type=int, default=2, help="prime field size (2, 3 or 5)")
    common.add_argument("--format", choices=("text", "json"), default="text")

    parser = argparse.ArgumentParser(prog="framedquiver", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_)
        if name == "chow-basis":
            p.add_argument("--degree", type=int, default=None)
        elif name == "chow-mul":
            p.add_argument("--a", help="partition tuple, e.g. '1;' (vertices split by ';')")
            p.add_argument("--b")
        elif name == "lr":
            p.add_argument("--mu", default="")
            p.add_argument("--nu", default="")
            p.add_argument("--lam", default="")
        elif name == "hall-mul":
            p.add_argument("factors", nargs="*", help="factors d:class_id, multiplied left to right")
        elif name == "serre-check":
            p.add_argument("--i", required=True)
            p.add_argument("--j", required=True)
        elif name == "eta":
            p.add_argument("--m", default=None, help="dimension vector of M")
            p.add_argument("--cls", type=int, default=0, help="iso-class id of M")
        elif name == "eta-kernel":
            p.add_argument("--max-total", type=int, default=2)
    return parser


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    out = Output()
    out.data["command"] = args.command
    try:
        if args.command != "lr":
            if args.quiver is None:
                raise ValidationError("--quiver is required")
            args.quiver_obj = load_quiver(args.quiver)
        if args.command in ("count-points", "gr-count", "iso-classes", "hall-mul", "serre-check", "eta", "an-orbits"):
            ffrep.check_prime(args.q)
            out.data["q"] = args.q
        COMMANDS[args.command][0](args, out)
    except EmptyModuli:
        out = Output()
        out.data.update(command=args.command)
        _empty(out)
    except ValidationError as exc:
        print(f"error: {exc}", file=stderr)
        return 2
    except SearchSpaceTooLarge as exc:
        print(f"error: {exc}", file=stderr)
        return 3
    if args.format == "json":
        print(json.dumps(out.data, sort_keys=True), file=stdout)
    else:
        print("\n".join(out.lines), file=stdout)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
