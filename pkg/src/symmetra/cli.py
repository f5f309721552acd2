"""Command-line runner.

Exit codes: 0 on success, 2 on usage errors, 1 when a numerical invariant
fails (the message names the property).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from pathlib import Path

import numpy as np

from . import acceptance
from .groups import FiniteGroup, GroupSizeError, cyclic_group, product_group, symmetric_group
from .models.base import restrict
from .models.h2 import H2Integrals, h2_hamiltonian, mixed_spin_product_state, product_label_to_sector
from .models.harper import butterfly, butterfly_to_csv, harper_hamiltonian, parse_flux
from .models.ising import blocks_to_csv, ising_block_spectra, ising_hamiltonian, ising_symmetry
from .oracles import random_state
from .qct import build_qct
from .qpe import SymmetryError, sqpe
from .reps import UnitaryRep, cyclic_shift_rep, parity_flip_rep, permutation_rep, translation_rep
from .resources import SCHEMES, cyclic_select_resources, resource_table, unary_iteration_resources
from .simulator import ZeroProbabilityError, basis_state, state_to_json
from .tgsa import all_projectors, tgsa_apply

RNG_NAME = acceptance.RNG_NAME


class UsageError(ValueError):
    pass


class InvariantError(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# parsing helpers


def parse_group(text: str) -> FiniteGroup:
    """``z8``, ``s3`` or products such as ``s3xz2``."""
    parts = text.lower().split("x")
    out = None
    for part in parts:
        m = re.fullmatch(r"([zs])(\d+)", part)
        if not m:
            raise UsageError(f"cannot parse group {text!r}; use e.g. z8, s3, s3xz2")
        kind, n = m.group(1), int(m.group(2))
        g = cyclic_group(n) if kind == "z" else symmetric_group(n)
        out = g if out is None else product_group(out, g)
    return out


def parse_rep(text: str) -> UnitaryRep:
    """``shift:m``, ``translation:N``, ``parity:N``, ``perm:N:m``, ``ising:N`` or ``h2``."""
    kind, *args = text.lower().split(":")
    try:
        nums = [int(a) for a in args]
        if kind == "shift" and len(nums) == 1:
            return cyclic_shift_rep(nums[0])
        if kind == "translation" and len(nums) == 1:
            return translation_rep(nums[0])
        if kind == "parity" and len(nums) == 1:
            return parity_flip_rep(nums[0])
        if kind == "perm" and len(nums) == 2:
            return permutation_rep(nums[0], nums[1])
        if kind == "ising" and len(nums) == 1:
            return ising_symmetry(nums[0])[1]
        if kind == "h2" and not nums:
            return h2_hamiltonian(H2Integrals.sample()).rep
    except ValueError as exc:
        raise UsageError(f"bad representation {text!r}: {exc}") from exc
    raise UsageError(f"cannot parse representation {text!r}")


def parse_state(args, dim: int) -> np.ndarray:
    if args.state is None:
        return random_state(dim, np.random.default_rng(args.seed))
    text = args.state
    if text.startswith("0b") or text.startswith("|"):
        bits = text.strip("|>").removeprefix("0b")
        index = int(bits, 2)
    else:
        index = int(text)
    if not 0 <= index < dim:
        raise UsageError(f"basis state {text!r} outside dimension {dim}")
    return basis_state(index, int(np.log2(dim)))


def parse_sweep(text: str) -> int:
    m = re.fullmatch(r"q?\s*<=\s*(\d+)|(\d+)", text.strip())
    if not m:
        raise UsageError(f"cannot parse sweep {text!r}; use q<=16")
    return int(m.group(1) or m.group(2))


def emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def dump_json(data) -> str:
    return json.dumps(data) + "\n"


def _csv(rows, header) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


# ---------------------------------------------------------------------------
# subcommands


def cmd_characters(args) -> int:
    G = parse_group(args.group)
    table = G.table
    if args.format == "json":
        emit(dump_json(table.to_json()), args.out)
        return 0

    def fmt(z):
        if table.chi_int is not None:
            return str(int(round(z.real)))
        return json.dumps([round(float(z.real), 15), round(float(z.imag), 15)])

    header = ["irrep", "dim"] + [f"{lab} [{size}]" for lab, size in zip(table.class_labels, table.class_sizes)]
    rows = [[r.label, r.dim] + [fmt(z) for z in row] for r, row in zip(table.irreps, table.chi)]
    emit(_csv(rows, header), args.out)
    return 0


def cmd_qct(args) -> int:
    G = parse_group(args.group)
    emit(dump_json(build_qct(G).to_json()), args.out)
    return 0


def cmd_project(args) -> int:
    rep = parse_rep(args.rep)
    G = rep.group
    psi = parse_state(args, rep.dim)
    try:
        post = tgsa_apply(G, rep, psi).postselect(G.irrep_index(args.irrep))
    except ZeroProbabilityError as exc:
        raise InvariantError(f"zero-probability branch: {exc}") from exc
    except (KeyError, IndexError) as exc:
        raise UsageError(f"unknown irrep {args.irrep!r} for {G.name}") from exc
    data = {"group": G.name, "irrep": G.irreps[G.irrep_index(args.irrep)].label, "seed": args.seed, "rng": RNG_NAME}
    data.update(post.to_json())
    emit(dump_json(data), args.out)
    return 0


def cmd_tgsa(args) -> int:
    rep = parse_rep(args.rep)
    G = rep.group
    psi = parse_state(args, rep.dim)
    anc = args.anc if args.anc is not None else 0
    try:
        out = tgsa_apply(G, rep, psi, anc)
    except (KeyError, IndexError) as exc:
        raise UsageError(f"unknown irrep {anc!r} for {G.name}") from exc
    data = {"seed": args.seed, "rng": RNG_NAME, "input_state": state_to_json(psi)}
    data.update(out.to_json())
    if out.total_probability > 1 + 1e-10:
        raise InvariantError(f"branch probabilities sum to {out.total_probability} > 1")
    emit(dump_json(data), args.out)
    return 0


def cmd_sqpe(args) -> int:
    if args.model == "h2":
        ints = H2Integrals.from_json(args.config) if args.config else H2Integrals.sample()
        model = h2_hamiltonian(ints)
        psi = mixed_spin_product_state() if args.state is None else parse_state(args, model.dim)
        label = product_label_to_sector
    else:
        b = parse_flux(args.b)
        model = harper_hamiltonian(args.m, b, args.jx, args.jy)
        psi = parse_state(args, model.dim)
        label = str
    try:
        dist = sqpe(model.group, model.rep, model.H, psi, args.n)
    except SymmetryError as exc:
        raise InvariantError(f"symmetry check: {exc}") from exc
    total = dist.branch_probabilities.sum()
    # every irrep here is one dimensional, so the branches exhaust the state
    if abs(total - 1) > 1e-8:
        raise InvariantError(f"joint distribution sums to {total}")
    rows = []
    if args.model == "h2":
        header = ["statistics", "spin", "u", "probability", "energy"]
        for lab, u, p, e in dist.rows():
            stat, spin = label(lab).split("/")
            rows.append([stat, spin, u, repr(p), repr(e)])
    else:
        header = ["irrep_label", "u", "probability", "energy"]
        rows = [[lab, u, repr(p), repr(e)] for lab, u, p, e in dist.rows()]
    emit(_csv(rows, header), args.out)
    return 0


def cmd_model(args) -> int:
    if args.name == "ising":
        rng = np.random.default_rng(args.seed)
        a = rng.uniform(0.2, 1.5, args.n) if args.disorder else np.full(args.n, args.a)
        w = rng.normal(scale=args.w, size=args.n) if args.w else np.zeros(args.n)
        model = ising_hamiltonian(args.n, a, w, args.j)
        blocks = ising_block_spectra(model)
        union = np.sort(np.concatenate(list(blocks.values())))
        if not args.w and not args.disorder and np.max(np.abs(union - model.spectrum())) > 1e-9:
            raise InvariantError("block spectra do not partition the full spectrum")
        emit(blocks_to_csv(blocks), args.out)
        return 0
    if args.name == "harper":
        if args.sweep:
            rows = butterfly(args.m, parse_sweep(args.sweep), args.jx, args.jy)
            dev = max(float(np.max(np.abs(a - f))) for _, a, f in rows)
            if dev > 1e-9:
                raise InvariantError(f"block spectra deviate from full spectra by {dev:.2e}")
            emit(butterfly_to_csv(rows), args.out)
        else:
            b = parse_flux(args.b)
            rows = [(b, np.linalg.eigvalsh(harper_hamiltonian(args.m, b, args.jx, args.jy).H), None)]
            emit(butterfly_to_csv(rows), args.out)
        return 0
    ints = H2Integrals.from_json(args.config) if args.config else H2Integrals.sample()
    model = h2_hamiltonian(ints)
    rows = []
    for irrep, P in zip(model.group.irreps, all_projectors(model.group, model.rep)):
        stat, spin = product_label_to_sector(irrep.label).split("/")
        for e in np.linalg.eigvalsh(restrict(model.H, P)):
            rows.append([stat, spin, repr(float(e))])
    emit(_csv(rows, ["statistics", "spin", "E"]), args.out)
    return 0


def cmd_resources(args) -> int:
    if args.unary:
        n_conj, size = args.unary
        est = unary_iteration_resources(n_conj, size)
        data = [{"n_classes": n_conj, "max_class_size": size, **est.to_dict()}]
    else:
        data = resource_table(range(1, args.m_max + 1), args.scheme)
        for row in data:
            row["select_applications"] = 2 ** row["m"] - 1 if args.scheme == "incrementer" else 1
            row["notes"] = cyclic_select_resources(row["m"], args.scheme).notes
    if args.format == "json":
        emit(dump_json(data), args.out)
    else:
        header = list(data[0])
        emit(_csv([[row[k] for k in header] for row in data], header), args.out)
    return 0


def cmd_selftest(args) -> int:
    print(acceptance.header())
    results = acceptance.run_all(corrupt_characters=args.inject_corruption, h2_config=args.config)
    for res in results:
        print(res.line())
        for name, ok in res.checks.items():
            if not ok:
                print(f"    violated: {name}")
    failed = [r.number for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} criteria passed")
    return 1 if failed else 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="symmetra", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, fmt=False):
        sp.add_argument("--out", help="output file (default stdout)")
        sp.add_argument("--seed", type=int, default=acceptance.SEED, help="64-bit seed for all random draws")
        if fmt:
            sp.add_argument("--format", choices=("csv", "json"), default="csv")

    sp = sub.add_parser("characters", help="character table; CSV columns: irrep, dim, one column per class")
    sp.add_argument("--group", required=True, help="z<M>, s<N> or products like s3xz2")
    common(sp, fmt=True)
    sp.set_defaults(func=cmd_characters)

    sp = sub.add_parser("qct", help="character transform matrix as JSON with index maps")
    sp.add_argument("--group", required=True)
    common(sp)
    sp.set_defaults(func=cmd_qct)

    rep_help = "shift:m, translation:N, parity:N, perm:N:m, ising:N or h2"
    state_help = "basis state as integer or 0b-bitstring (default: seeded random state)"
    sp = sub.add_parser("project", help="post-selected projection onto one irrep, as JSON")
    sp.add_argument("--rep", required=True, help=rep_help)
    sp.add_argument("--irrep", required=True, help="irrep label or index")
    sp.add_argument("--state", help=state_help)
    common(sp)
    sp.set_defaults(func=cmd_project)

    sp = sub.add_parser("tgsa", help="full transform; JSON branches {label, probability, amplitude, state}")
    sp.add_argument("--rep", required=True, help=rep_help)
    sp.add_argument("--anc", help="ancilla irrep label (default: trivial irrep)")
    sp.add_argument("--state", help=state_help)
    common(sp)
    sp.set_defaults(func=cmd_tgsa)

    sp = sub.add_parser(
        "sqpe",
        help="symmetry-adapted phase estimation; CSV columns statistics, spin, u, probability, energy (h2) "
        "or irrep_label, u, probability, energy (harper)",
    )
    sp.add_argument("--model", choices=("h2", "harper"), default="h2")
    sp.add_argument("--config", help="H2 integrals JSON (default: bundled sample)")
    sp.add_argument("--n", type=int, default=6, help="phase-estimation ancillas")
    sp.add_argument("--m", type=int, default=2, help="harper: qubits per direction")
    sp.add_argument("--b", default="1/2", help="harper: flux as p/q or decimal")
    sp.add_argument("--jx", type=float, default=1.0)
    sp.add_argument("--jy", type=float, default=1.0)
    sp.add_argument("--state", help=state_help)
    common(sp)
    sp.set_defaults(func=cmd_sqpe)

    sp = sub.add_parser(
        "model",
        help="model spectra; ising CSV k, sigma, E; harper CSV b, E; h2 CSV statistics, spin, E",
    )
    sp.add_argument("name", choices=("ising", "harper", "h2"))
    sp.add_argument("--n", type=int, default=8, help="ising: sites")
    sp.add_argument("--a", type=float, default=1.0, help="ising: uniform transverse field")
    sp.add_argument("--w", type=float, default=0.0, help="ising: std of random longitudinal field")
    sp.add_argument("--j", type=float, default=1.0, help="ising: coupling")
    sp.add_argument("--disorder", action="store_true", help="ising: random transverse fields")
    sp.add_argument("--m", type=int, default=3, help="harper: qubits per direction")
    sp.add_argument("--b", default="1/2", help="harper: flux as p/q or decimal")
    sp.add_argument("--sweep", help="harper: butterfly over reduced p/q with q<=Q, e.g. q<=16")
    sp.add_argument("--jx", type=float, default=1.0)
    sp.add_argument("--jy", type=float, default=1.0)
    sp.add_argument("--config", help="h2: integrals JSON")
    common(sp)
    sp.set_defaults(func=cmd_model)

    sp = sub.add_parser("resources", help="gate-count estimates over m = 1..m-max")
    sp.add_argument("--m-max", type=int, default=10)
    sp.add_argument("--scheme", choices=SCHEMES, default="adder")
    sp.add_argument("--unary", type=int, nargs=2, metavar=("N_CONJ", "MAX_CLASS"), help="unary-iteration SELECT cost")
    common(sp, fmt=True)
    sp.set_defaults(func=cmd_resources)

    sp = sub.add_parser("selftest", help="run the acceptance suite; exit 1 on any failure")
    sp.add_argument("--inject-corruption", action="store_true", help="perturb one character table (negative control)")
    sp.add_argument("--config", help="H2 integrals JSON for the phase-estimation criterion")
    sp.set_defaults(func=cmd_selftest)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InvariantError as exc:
        print(f"invariant violated: {exc}", file=sys.stderr)
        return 1
    except (UsageError, GroupSizeError, FileNotFoundError, ValueError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
