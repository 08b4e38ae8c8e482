"""Command-line front end.

Exit codes: 0 success, 1 the input is invalid (or unformatted under
``fmt --check``), 2 usage or I/O failure. Diagnostics go to stderr, one
per line: ``SEVERITY CODE file:line:col message [rule]``. Set
``BMC_NO_COLOR`` to disable ANSI styling.
"""
from __future__ import annotations

import argparse
import difflib
import json
import os
import sys
from pathlib import Path

from .diagnostics import Diagnostic, Severity, has_errors, line_col
from .dsl import format_enterprise
from .export import to_dot, to_json, to_svg
from .model import BusinessModel, ElementKind, Enterprise
from .pipeline import check_envelope, check_text, deny_warnings, format_text
from .policy import POLICY, required_kind

_RED = "\x1b[31m"
_YELLOW = "\x1b[33m"
_RESET = "\x1b[0m"


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except BrokenPipeError:
        return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bmclang",
        description="Toolchain for the textual business model canvas language",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_check = sub.add_parser("check", help="validate a model file")
    p_check.add_argument("path")
    p_check.add_argument("--no-lint", action="store_true",
                         help="suppress advisory warnings")
    p_check.add_argument("--json", action="store_true",
                         help="emit diagnostics as JSON on stdout")
    p_check.add_argument("--deny-warnings", action="store_true",
                         help="treat warnings as errors")
    p_check.add_argument("--input", choices=("dsl", "json"),
                         help="override format detection by extension")
    p_check.set_defaults(func=cmd_check)

    p_fmt = sub.add_parser("fmt", help="canonically format a model file")
    p_fmt.add_argument("path")
    mode = p_fmt.add_mutually_exclusive_group()
    mode.add_argument("--write", action="store_true", help="rewrite the file in place")
    mode.add_argument("--check", action="store_true",
                      help="exit 1 if the file is not canonical")
    p_fmt.set_defaults(func=cmd_fmt)

    p_render = sub.add_parser("render", help="emit dot, svg, or json")
    p_render.add_argument("path")
    p_render.add_argument("--format", choices=("dot", "svg", "json"), required=True)
    p_render.add_argument("-o", "--output", help="output file (default stdout)")
    p_render.add_argument("--bm", help="business model name for dot/svg")
    p_render.add_argument("--input", choices=("dsl", "json"))
    p_render.set_defaults(func=cmd_render)

    p_infer = sub.add_parser("infer", help="relationship kind for a kind pair")
    p_infer.add_argument("src")
    p_infer.add_argument("dst")
    p_infer.set_defaults(func=cmd_infer)

    p_matrix = sub.add_parser("matrix", help="print the full relationship policy")
    p_matrix.add_argument("--format", choices=("table", "csv"), default="table")
    p_matrix.set_defaults(func=cmd_matrix)

    p_serve = sub.add_parser("serve", help="run the local wire API")
    p_serve.add_argument("--port", type=int, default=8765)
    p_serve.add_argument("--bind", default="127.0.0.1",
                         help="bind address (non-loopback is unsafe)")
    p_serve.add_argument("--max-request-bytes", type=int, default=1 << 20)
    p_serve.add_argument("--quiet", action="store_true",
                         help="suppress per-request logging")
    p_serve.set_defaults(func=cmd_serve)
    return parser


# -- helpers -----------------------------------------------------------------

def _read(path: str) -> tuple[str, str] | int:
    """Return (text, source-format) or exit code 2."""
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        print(f"bmclang: cannot read {path}: {exc.strerror or exc}", file=sys.stderr)
        return 2
    except UnicodeDecodeError:
        print(f"bmclang: {path} is not valid UTF-8", file=sys.stderr)
        return 2
    if p.suffix == ".bmc":
        return text, "dsl"
    if p.suffix == ".json":
        return text, "json"
    return text, ""


def _pick_source(detected: str, override: str | None, path: str) -> str | int:
    if override:
        return override
    if detected:
        return detected
    print(
        f"bmclang: cannot tell the format of {path} (expected .bmc or .json); "
        "use --input dsl|json",
        file=sys.stderr,
    )
    return 2


def _color_enabled() -> bool:
    return sys.stderr.isatty() and not os.environ.get("BMC_NO_COLOR")


def _print_diagnostics(diagnostics: list[Diagnostic], path: str, text: str) -> None:
    color = _color_enabled()
    for diag in diagnostics:
        severity = diag.severity.value.upper()
        if color:
            tint = _RED if diag.severity is Severity.ERROR else _YELLOW
            severity = f"{tint}{severity}{_RESET}"
        if diag.span is not None:
            line, col = line_col(text, diag.span.start)
        else:
            line, col = 1, 1
        parts = [severity, diag.code, f"{path}:{line}:{col}", diag.message]
        if diag.rule_refs:
            parts.append(f"[{','.join(diag.rule_refs)}]")
        if diag.fix_hint is not None:
            parts.append(f"(hint: {diag.fix_hint})")
        print(" ".join(parts), file=sys.stderr)


# -- commands ----------------------------------------------------------------

def cmd_check(args: argparse.Namespace) -> int:
    loaded = _read(args.path)
    if isinstance(loaded, int):
        return loaded
    text, detected = loaded
    source = _pick_source(detected, args.input, args.path)
    if isinstance(source, int):
        return source
    result = check_text(text, source, lints=not args.no_lint)
    if args.deny_warnings:
        result.diagnostics = deny_warnings(result.diagnostics)
    if args.json:
        print(json.dumps(check_envelope(result), indent=2, ensure_ascii=False))
    else:
        _print_diagnostics(result.diagnostics, args.path, text)
    return 0 if result.ok else 1


def cmd_fmt(args: argparse.Namespace) -> int:
    loaded = _read(args.path)
    if isinstance(loaded, int):
        return loaded
    text, detected = loaded
    if detected and detected != "dsl":
        print(f"bmclang: fmt expects a .bmc file, got {args.path}", file=sys.stderr)
        return 2
    canonical, diagnostics = format_text(text)
    if canonical is None:
        _print_diagnostics(diagnostics, args.path, text)
        print(f"bmclang: {args.path} has syntax errors; cannot format",
              file=sys.stderr)
        return 2
    if args.write:
        Path(args.path).write_text(canonical, encoding="utf-8")
        return 0
    if args.check:
        if text == canonical:
            return 0
        diff = difflib.unified_diff(
            text.splitlines(keepends=True),
            canonical.splitlines(keepends=True),
            fromfile=args.path,
            tofile=f"{args.path} (canonical)",
        )
        sys.stdout.write("".join(diff))
        return 1
    sys.stdout.write(canonical)
    return 0


def cmd_render(args: argparse.Namespace) -> int:
    loaded = _read(args.path)
    if isinstance(loaded, int):
        return loaded
    text, detected = loaded
    source = _pick_source(detected, args.input, args.path)
    if isinstance(source, int):
        return source
    result = check_text(text, source)
    if not result.ok or result.enterprise is None:
        _print_diagnostics(result.diagnostics, args.path, text)
        return 1
    output = _render(result.enterprise, args.format, args.bm)
    if isinstance(output, int):
        return output
    if args.output:
        Path(args.output).write_text(output, encoding="utf-8")
    else:
        sys.stdout.write(output)
    return 0


def _render(enterprise: Enterprise, fmt: str, bm_name: str | None) -> str | int:
    if fmt == "json":
        return to_json(enterprise)
    bm = _select_bm(enterprise, bm_name)
    if isinstance(bm, int):
        return bm
    return to_dot(bm) if fmt == "dot" else to_svg(bm)


def _select_bm(enterprise: Enterprise, bm_name: str | None) -> BusinessModel | int:
    if bm_name is None:
        if len(enterprise.business_models) == 1:
            return enterprise.business_models[0]
        names = ", ".join(f"'{m.name}'" for m in enterprise.walk_business_models())
        print(
            f"bmclang: the enterprise has several business models ({names}); "
            "pick one with --bm NAME",
            file=sys.stderr,
        )
        return 2
    for bm in enterprise.walk_business_models():
        if bm.name == bm_name:
            return bm
    print(f"bmclang: no business model named '{bm_name}'", file=sys.stderr)
    return 2


def cmd_infer(args: argparse.Namespace) -> int:
    kinds = []
    for token in (args.src, args.dst):
        kind = ElementKind.from_token(token)
        if kind is None:
            print(f"bmclang: unknown element kind '{token}'", file=sys.stderr)
            return 2
        kinds.append(kind)
    entry = required_kind(kinds[0], kinds[1])
    if entry.required:
        print(entry.kind.value)
    else:
        print(f"reverse-only (reverse kind: {entry.kind.value})")
    return 0


def cmd_matrix(args: argparse.Namespace) -> int:
    kinds = list(ElementKind)
    if args.format == "csv":
        print("src,dst,entry")
        for src in kinds:
            for dst in kinds:
                entry = POLICY[(src, dst)]
                cell = entry.kind.value if entry.required \
                    else f"reverse-only({entry.kind.value})"
                print(f"{src.abbrev},{dst.abbrev},{cell}")
        return 0
    short = {"supports": "S", "determines": "D", "affects": "A"}
    width = 4
    header = "    " + "".join(k.abbrev.ljust(width) for k in kinds)
    print(header.rstrip())
    for src in kinds:
        cells = []
        for dst in kinds:
            entry = POLICY[(src, dst)]
            mark = short[entry.kind.value]
            cells.append(mark if entry.required else f"·{mark}")
        print((src.abbrev.ljust(4) + "".join(c.ljust(width) for c in cells)).rstrip())
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    from .service import serve

    return serve(args.port, bind=args.bind,
                 max_request_bytes=args.max_request_bytes, quiet=args.quiet)


if __name__ == "__main__":
    sys.exit(main())
