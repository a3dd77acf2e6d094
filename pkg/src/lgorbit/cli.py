"""Command-line surface: every pipeline stage with reproducible seeds.

Exit codes: 0 when every requested check passes, 1 on a failed mathematical
check, 2 on usage errors (including an inadmissible spectrum).  All output is
bit-stable for a fixed invocation: JSON is key-sorted and the only entropy
source is the explicit seed.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .blowup import divisor_report, hessian_certificates, no_critical_on_exceptional
from .errors import EmptyLocus, HypothesisViolated, NotNilpotent, SpectrumError
from .hodge import (
    gysin_purity,
    hodge_tate_check,
    mayer_vietoris_fiber,
    named_spaces,
    relative_profile,
)
from .kkp import KKPDiamond, kkp_report, render_diamond
from .linalg import QMatrix, as_fraction, format_fraction
from .orbit import (
    Spectrum,
    build_forms,
    classify_pair,
    critical_locus_json,
    rank_one_locus_certificate,
    sample_and_rank,
)
from .weights import check_filtration_axioms, nilpotent_op, weight_filtration

USAGE_ERROR = 2
CHECK_FAILED = 1


def _parse_lambda(text):
    return tuple(Fraction(part.strip()) for part in text.split(",") if part.strip())


def _auto_lambda(n):
    # 1, 2, ..., n, -n(n+1)/2: distinct and traceless for every n >= 1
    values = [Fraction(k) for k in range(1, n + 1)]
    values.append(Fraction(-n * (n + 1), 2))
    return tuple(values)


def _spectrum_from_args(args) -> Spectrum:
    if args.lam is None and not args.auto_lambda:
        raise SpectrumError("provide --lambda or --auto-lambda")
    values = _auto_lambda(args.n) if args.auto_lambda else _parse_lambda(args.lam)
    spectrum = Spectrum.from_values(values)
    if spectrum.n != args.n:
        raise SpectrumError(
            f"--lambda has {len(values)} entries, but --n {args.n} needs {args.n + 1}"
        )
    return spectrum


def _parse_vector(token, dim):
    token = token.strip()
    if token.startswith("e"):
        index = int(token[1:])
        if not 1 <= index <= dim:
            raise ValueError(f"basis vector {token} out of range for dimension {dim}")
        return tuple(Fraction(1) if i == index - 1 else Fraction(0) for i in range(dim))
    parts = [Fraction(p) for p in token.split(":")]
    if len(parts) != dim:
        raise ValueError(f"vector {token!r} has {len(parts)} entries, want {dim}")
    return tuple(parts)


def _parse_vector_list(text, dim):
    return [_parse_vector(tok, dim) for tok in text.split(",") if tok.strip()]


def _emit(payload, args, text_renderer=None):
    if args.format == "json":
        sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write(text_renderer(payload) if text_renderer else _plain_text(payload))


def _plain_text(payload, indent=0):
    pad = "  " * indent
    lines = []
    if isinstance(payload, dict):
        for key in sorted(payload, key=str):
            value = payload[key]
            if isinstance(value, (dict, list)):
                lines.append(f"{pad}{key}:")
                lines.append(_plain_text(value, indent + 1).rstrip("\n"))
            else:
                lines.append(f"{pad}{key}: {value}")
    elif isinstance(payload, list):
        for value in payload:
            if isinstance(value, (dict, list)):
                lines.append(_plain_text(value, indent).rstrip("\n"))
            else:
                lines.append(f"{pad}- {value}")
    else:
        lines.append(f"{pad}{payload}")
    return "\n".join(lines) + "\n"


def cmd_model(args):
    spectrum = _spectrum_from_args(args)
    forms = build_forms(spectrum)
    payload = {
        "n": spectrum.n,
        "lambda": [format_fraction(v) for v in spectrum.diag],
        "forms": {
            "weighted": forms.weighted.to_json(),
            "incidence": forms.incidence.to_json(),
        },
        "critical_locus": critical_locus_json(spectrum),
    }
    _emit(payload, args)
    return 0


def cmd_verify(args):
    spectrum = _spectrum_from_args(args)
    n = spectrum.n
    flag = sample_and_rank(spectrum, "flag", seed=args.seed, count=args.samples)
    flag_ranks = [rank for _, rank in flag]
    base_ranks = []
    base_note = None
    if n >= 2:
        base = sample_and_rank(spectrum, "base", seed=args.seed + 1, count=args.samples)
        base_ranks = [rank for _, rank in base]
    else:
        base_note = "base locus sampling is empty for n = 1"
    locus_cert = rank_one_locus_certificate(spectrum)
    exceptional = no_critical_on_exceptional(spectrum, seed=args.seed, count=args.samples)
    hessians = hessian_certificates(spectrum)
    divisors = divisor_report(n)
    ok = (
        all(r == 2 for r in flag_ranks)
        and all(r == 2 for r in base_ranks)
        and locus_cert["verified"]
        and locus_cert["disjoint_from_base_locus"]
        and exceptional["all_rank_two"]
        and all(cert["nondegenerate"] for cert in hessians)
    )
    payload = {
        "n": n,
        "lambda": [format_fraction(v) for v in spectrum.diag],
        "seed": args.seed,
        "samples": args.samples,
        "flag_ranks": sorted(set(flag_ranks)),
        "base_ranks": sorted(set(base_ranks)),
        "base_note": base_note,
        "rank_le_one_locus": locus_cert,
        "exceptional": exceptional,
        "hessians": hessians,
        "divisor_classes": divisors,
        "pass": ok,
    }
    _emit(payload, args)
    return 0 if ok else CHECK_FAILED


def cmd_hodge(args):
    n = args.n
    spaces = named_spaces(n)
    fiber = mayer_vietoris_fiber(n)
    relative = relative_profile(n)
    purity = gysin_purity(n)
    payload = {
        "n": n,
        "epolys": {name: poly.to_json() for name, poly in spaces.items()},
        "hodge_tate": {name: hodge_tate_check(poly) for name, poly in spaces.items()},
        "fiber": {
            "derived": {str(k): v for k, v in sorted(fiber.derived.items())},
            "reference": {str(k): v for k, v in sorted(fiber.reference.items())},
            "discrepancies": fiber.discrepancies,
        },
        "relative": {
            "dims": {str(k): v for k, v in sorted(relative.dims.items())},
            "unique": relative.unique,
            "inconsistency": relative.inconsistency,
        },
        "purity": purity,
        "imported_facts": relative.imported_facts,
    }
    ok = relative.unique and purity["pure"] and relative.inconsistency is None
    _emit(payload, args)
    return 0 if ok else CHECK_FAILED


def cmd_weights(args):
    with open(args.matrix, "r", encoding="utf-8") as handle:
        raw = json.load(handle)
    rows = raw["matrix"] if isinstance(raw, dict) else raw
    matrix = QMatrix(rows)
    op = nilpotent_op(matrix)
    filtration = weight_filtration(op, args.center)
    axioms = check_filtration_axioms(op, filtration)
    graded = filtration.graded_dims()
    payload = {
        "center": args.center,
        "nilpotency_index": op.index,
        "graded_dims": {str(w): d for w, d in enumerate(graded)},
        "axioms_ok": axioms["ok"],
        "filtration": [space.to_json() for space in filtration.spaces],
    }
    _emit(payload, args)
    return 0 if axioms["ok"] else CHECK_FAILED


def cmd_diamond(args):
    spectrum = _spectrum_from_args(args)
    report = kkp_report(spectrum, seed=args.seed, exceptional_samples=args.samples)

    def renderer(payload):
        n = payload["n"]
        diamond = KKPDiamond("h", 2 * n, {(n, n): payload["checks"]["center_value"]})
        lines = [
            f"minimal-orbit model n={n}, lambda=({', '.join(payload['lambda'])})",
            f"critical values: {', '.join(payload['critical_values'])}",
            f"relative profile: {payload['profile']}",
            "",
            render_diamond(diamond),
            "",
            f"checks: sum_identity={payload['checks']['sum_identity']} "
            f"equality={payload['checks']['equality']} "
            f"center_value={payload['checks']['center_value']}",
            f"growth at infinity: {payload['fano_type']}",
            f"status: {payload['status']}",
            "findings:",
        ]
        for item in payload["discrepancies"]:
            lines.append(f"  - [{item['kind']}] {item.get('note', '')}")
        return "\n".join(lines) + "\n"

    _emit(report, args, renderer)
    return 0 if report["status"] == "PASS" else CHECK_FAILED


def cmd_classify(args):
    dim = args.n + 1
    v_rows = _parse_vector_list(args.V, dim)
    w_rows = _parse_vector_list(args.W, dim)
    label = classify_pair(v_rows, w_rows, ambient=dim)
    k = len(v_rows)
    meaning = "open orbit (transversal)" if label == 0 else (
        "closed orbit (containment)" if label == k else "intermediate orbit"
    )
    payload = {"n": args.n, "k": k, "label": label, "meaning": meaning}
    _emit(payload, args)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="lgorbit",
        description="Exact certificates for minimal-orbit Landau-Ginzburg models",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_spectrum_options(p):
        p.add_argument("--n", type=int, required=True, help="orbit parameter n >= 1")
        p.add_argument(
            "--lambda",
            dest="lam",
            help="comma-separated rationals, n+1 of them, distinct, summing to zero",
        )
        p.add_argument(
            "--auto-lambda",
            action="store_true",
            help="use the admissible spectrum 1, 2, ..., n, -n(n+1)/2",
        )

    def add_common(p):
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--samples", type=int, default=50)
        p.add_argument("--format", choices=("text", "json"), default="text")

    p_model = sub.add_parser("model", help="pencil forms and critical locus")
    add_spectrum_options(p_model)
    add_common(p_model)
    p_model.set_defaults(func=cmd_model)

    p_verify = sub.add_parser("verify", help="rank, tameness, and divisor certificates")
    add_spectrum_options(p_verify)
    add_common(p_verify)
    p_verify.set_defaults(func=cmd_verify)

    p_hodge = sub.add_parser("hodge", help="E-polynomials, fiber/relative profiles, purity")
    p_hodge.add_argument("--n", type=int, required=True)
    add_common(p_hodge)
    p_hodge.set_defaults(func=cmd_hodge)

    p_weights = sub.add_parser("weights", help="weight filtration of a matrix from file")
    p_weights.add_argument("--matrix", required=True, help="JSON file with the matrix rows")
    p_weights.add_argument("--center", type=int, required=True)
    add_common(p_weights)
    p_weights.set_defaults(func=cmd_weights)

    p_diamond = sub.add_parser("diamond", help="full diamond report with all checks")
    add_spectrum_options(p_diamond)
    add_common(p_diamond)
    p_diamond.set_defaults(func=cmd_diamond)

    p_classify = sub.add_parser("classify", help="diagonal-action orbit label of a subspace pair")
    p_classify.add_argument("--n", type=int, required=True)
    p_classify.add_argument("--V", required=True, help='basis vectors, e.g. "e1" or "1:0:0,0:1:0"')
    p_classify.add_argument("--W", required=True)
    add_common(p_classify)
    p_classify.set_defaults(func=cmd_classify)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SpectrumError as exc:
        print(f"error: inadmissible spectrum: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except (ValueError, EmptyLocus) as exc:
        if isinstance(exc, (HypothesisViolated, NotNilpotent)):
            print(f"error: {exc}", file=sys.stderr)
            return CHECK_FAILED
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


def entrypoint():
    raise SystemExit(main())


if __name__ == "__main__":
    entrypoint()
