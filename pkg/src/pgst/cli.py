"""Command-line interface.

Every command prints one compact JSON document (stable key order, no
timestamps) to stdout or to ``-o``. Exit codes: 0 success, 2 malformed
input, 3 resource cap exceeded. Verdicts never change the exit code.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .classify import classify_corners, laplacian_corner_verdict
from .cospectral import CornerPair
from .dynamics import find_time_reaching, scan_fidelity
from .engine import Certificate, decide_pgst, verify_certificate
from .errors import DomainError, ResourceLimitError
from .spectra import DEFAULT_CAP, Hamiltonian, ProductGraph, spectrum_table
from .witness import WitnessFamily, build_witness

EXIT_OK, EXIT_INPUT, EXIT_CAP = 0, 2, 3
COMMANDS = ("classify", "decide", "certify", "witness", "spectrum", "scan")


@dataclass
class JobSpec:
    command: str
    factors: tuple[int, ...] = ()
    hamiltonian: Hamiltonian = Hamiltonian.ADJACENCY
    pair: str | None = None
    t_max: float = 100.0
    samples: int | None = None
    target: float | None = None
    output: str | None = None
    seed: int | None = None
    cap: int = DEFAULT_CAP
    certificate: str | None = None
    family: str | None = None
    p1: int | None = None
    p2: int | None = None

    def validate(self) -> "JobSpec":
        if self.command not in COMMANDS:
            raise DomainError(f"unknown command {self.command!r}")
        if self.command in ("classify", "decide", "spectrum", "scan") and not self.factors:
            raise DomainError("--factors must list at least one path size")
        if self.pair is not None and self.factors:
            masks = self.pair.split("/")
            if len(masks) != 2 or any(len(m) != len(self.factors) for m in masks):
                raise DomainError(f"--pair {self.pair!r} must be two masks of length {len(self.factors)}")
        return self

    def graph(self) -> ProductGraph:
        return ProductGraph.of(self.factors, self.hamiltonian)

    def corner_pair(self, G: ProductGraph) -> CornerPair:
        if self.pair is None:
            return CornerPair.adjacent(G, 0)
        a, b = self.pair.split("/")
        return CornerPair.from_bits(G, a, b)


def _dumps(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _frac(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _spectrum_doc(G: ProductGraph, cap: int) -> dict:
    table = spectrum_table(G, cap)
    groups = []
    for g in table.groups:
        groups.append({
            "value": g.value.float_value(),
            "conductor": g.value.conductor,
            "coeffs": [_frac(c) for c in g.value.coeffs],
            "indices": [list(i) for i in g.indices],
        })
    return {
        "factors": list(G.sizes),
        "hamiltonian": G.hamiltonian.value,
        "distinct": table.distinct_count,
        "simple": table.is_simple,
        "groups": groups,
    }


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise DomainError(f"cannot read {path}: {exc}") from exc


def _execute(spec: JobSpec) -> dict:
    cmd = spec.command
    if cmd == "classify":
        G = spec.graph()
        if G.hamiltonian is Hamiltonian.LAPLACIAN:
            return laplacian_corner_verdict(G).to_dict()
        return classify_corners(G).to_dict()
    if cmd == "decide":
        G = spec.graph()
        return decide_pgst(G, spec.corner_pair(G), cap=spec.cap).to_dict()
    if cmd == "certify":
        if spec.certificate is None:
            raise DomainError("certify needs a certificate file")
        cert = Certificate.from_json(_read_text(spec.certificate))
        return {"valid": verify_certificate(cert, cap=spec.cap)}
    if cmd == "witness":
        if spec.family is None or spec.p1 is None or spec.p2 is None:
            raise DomainError("witness needs --family, --p1 and --p2")
        return build_witness(spec.family, spec.p1, spec.p2).to_dict()
    if cmd == "spectrum":
        return _spectrum_doc(spec.graph(), spec.cap)
    # scan
    G = spec.graph()
    pair = spec.corner_pair(G)
    trace = scan_fidelity(G, pair, spec.t_max, spec.samples)
    doc = {
        "factors": list(G.sizes),
        "hamiltonian": G.hamiltonian.value,
        "pair": [list(pair.a), list(pair.b)],
        **trace.summary(),
        "csv": spec.output,
    }
    if spec.target is not None:
        doc["target"] = spec.target
        doc["reached_at"] = find_time_reaching(G, pair, spec.target, spec.t_max, spec.samples)
        doc["note"] = "reached_at null only means no time was found within t_max; it is not evidence against PGST"
    if spec.output is not None:
        with open(spec.output, "w", encoding="utf-8", newline="") as fh:
            trace.write_csv(fh)
    return doc


def run(spec: JobSpec, stdout=None, stderr=None) -> int:
    """Execute one job and return its exit code."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        spec.validate()
        doc = _execute(spec)
    except ResourceLimitError as exc:
        print(_dumps({"error": "resource_cap", "message": str(exc)}), file=stderr)
        return EXIT_CAP
    except (DomainError, ValueError) as exc:
        print(_dumps({"error": "malformed_input", "message": str(exc)}), file=stderr)
        return EXIT_INPUT
    text = _dumps(doc)
    if spec.output is not None and spec.command != "scan":
        with open(spec.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text, file=stdout)
    return EXIT_OK


def _sizes(text: str) -> tuple[int, ...]:
    try:
        sizes = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not sizes or any(n < 2 for n in sizes):
        raise argparse.ArgumentTypeError("every path needs at least 2 vertices")
    return sizes


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pgst", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, graph=True):
        if graph:
            sp.add_argument("--factors", type=_sizes, required=True, help="path sizes, e.g. 3,2")
            sp.add_argument("--hamiltonian", choices=[h.value for h in Hamiltonian], default="adjacency")
        sp.add_argument("-o", "--output", help="write the result here instead of stdout")
        sp.add_argument("--seed", type=int, help="recorded for test tooling; results do not depend on it")
        sp.add_argument("--cap", type=int, default=DEFAULT_CAP, help="vertex-count cap for exact spectra")

    common(sub.add_parser("classify", help="corner classification (closed form)"))
    sp = sub.add_parser("decide", help="exact PGST decision for one corner pair")
    common(sp)
    sp.add_argument("--pair", help="source/target corner masks, e.g. 10/00")
    sp = sub.add_parser("certify", help="verify a certificate JSON file ('-' for stdin)")
    common(sp, graph=False)
    sp.add_argument("certificate")
    sp = sub.add_parser("witness", help="emit a certificate of a no-PGST family")
    common(sp, graph=False)
    sp.add_argument("--family", required=True, choices=[f.value for f in WitnessFamily])
    sp.add_argument("--p1", type=int, required=True)
    sp.add_argument("--p2", type=int, required=True)
    common(sub.add_parser("spectrum", help="grouped exact spectrum"))
    sp = sub.add_parser("scan", help="sample the corner fidelity; -o names the CSV trace")
    common(sp)
    sp.add_argument("--pair", help="source/target corner masks, e.g. 10/00")
    sp.add_argument("--t-max", type=float, default=100.0)
    sp.add_argument("--samples", type=int, help="grid size (default 1000 per time unit)")
    sp.add_argument("--target", type=float, help="also report the first time reaching this fidelity")
    return p


def parse_job(argv: Sequence[str] | None = None) -> JobSpec:
    ns = build_parser().parse_args(argv)
    return JobSpec(
        command=ns.command,
        factors=getattr(ns, "factors", ()) or (),
        hamiltonian=Hamiltonian(getattr(ns, "hamiltonian", "adjacency")),
        pair=getattr(ns, "pair", None),
        t_max=getattr(ns, "t_max", 100.0),
        samples=getattr(ns, "samples", None),
        target=getattr(ns, "target", None),
        output=ns.output,
        seed=ns.seed,
        cap=ns.cap,
        certificate=getattr(ns, "certificate", None),
        family=getattr(ns, "family", None),
        p1=getattr(ns, "p1", None),
        p2=getattr(ns, "p2", None),
    )


def main(argv: Sequence[str] | None = None) -> int:
    return run(parse_job(argv))


if __name__ == "__main__":
    sys.exit(main())
