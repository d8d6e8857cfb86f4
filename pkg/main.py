#!/usr/bin/env python3
"""
cayleyaut - automorphism groups of Cayley graphs over finite abelian groups
"""
import argparse
import json
import sys

from colorama import init as colorama_init, Fore, Style

from cayleyaut.analysis_engine import AnalysisEngine
from cayleyaut.corpus import CORPUS, run_corpus
from cayleyaut.exceptions import CayleyAutError, CorpusMismatch
from cayleyaut.families import FAMILIES, build_family, parse_cli_params
from cayleyaut.models import AnalysisReport, GraphSpecFile
from cayleyaut.settings import Settings, configure_logging, load_settings

colorama_init()


def print_banner():
    """Print application banner"""
    banner = f"""
{Fore.CYAN}{'='*60}
    cayleyaut
    Automorphisms of Cayley graphs on finite abelian groups
{'='*60}{Style.RESET_ALL}
"""
    print(banner, file=sys.stderr)


def emit(text: str):
    """Write the final output to stdout in one call"""
    if not text.endswith('\n'):
        text += '\n'
    sys.stdout.write(text)
    sys.stdout.flush()


def _yes_no(value) -> str:
    if value is None:
        return f"{Fore.YELLOW}n/a{Style.RESET_ALL}"
    return f"{Fore.GREEN}yes{Style.RESET_ALL}" if value else f"{Fore.RED}no{Style.RESET_ALL}"


def _settings(args) -> Settings:
    settings = load_settings(getattr(args, 'config', None)).override(
        max_brute_force_vertices=getattr(args, 'max_vertices', None),
        workers=getattr(args, 'workers', None),
    )
    configure_logging(settings.log_level, settings.log_file)
    return settings


def format_report(report: AnalysisReport) -> str:
    """Human-readable rendering of an analysis report"""
    lines = [
        f"{Fore.CYAN}Cay({report.group}){Style.RESET_ALL}"
        + (f" [{report.label}]" if report.label else ''),
        f"  Vertices: {report.vertices}",
        f"  Degree: {report.degree}",
        f"  Edges: {report.edges}",
        f"  Diameter: {report.diameter if report.diameter is not None else 'infinite'}",
        '',
    ]

    us = report.us
    lines.append(f"us property: {_yes_no(us['holds'])}")
    if us['witness'] is not None:
        w = us['witness']
        lines.append(f"  Witness: {w['first'][0]} + {w['first'][1]} = {w['second'][0]} + {w['second'][1]}"
                     f" = {w['g']} ({us['collisions']} colliding sums)")

    lines.append('')
    lines.append(f"|Aut(H,S)|: {report.aut_stabilizing_order}")
    lines.append(f"Predicted order |L(H) x Aut(H,S)|: {report.predicted_order}")
    if report.aut_order is None:
        lines.append(f"{Fore.YELLOW}Exhaustive search skipped{Style.RESET_ALL}")
    else:
        lines.append(f"|Aut(graph)|: {report.aut_order}")
        p = report.theorem32
        lines.append(f"  Applicable: {_yes_no(p['applicable'])}")
        lines.append(f"  Containment: {_yes_no(p['containment'])}")
        lines.append(f"  Equality: {_yes_no(p['equality'])}")
        if p['applicable'] and not p['confirmed']:
            lines.append(f"{Fore.RED}WARNING: us holds but the predicted group differs{Style.RESET_ALL}")
        lines.append(f"  Stabilizer of 0: {report.stabilizer['order']}")
        lines.append('')
        lines.append(f"Vertex transitive: {_yes_no(report.vertex_transitive)}")
        lines.append(f"Arc transitive: {_yes_no(report.arc_transitive)}")
        lines.append(f"Edge transitive: {_yes_no(report.edge_transitive)}")
        if report.dihedral is not None:
            lines.append(f"Dihedral D_{2 * report.dihedral['n']}: {_yes_no(report.dihedral['is_dihedral'])}")

    if report.connectivity is not None:
        lines.append('')
        lines.append(f"Vertex connectivity: {report.connectivity['vertex']}")
        lines.append(f"Edge connectivity: {report.connectivity['edge']}")

    if report.timings:
        lines.append('')
        lines.append(f"{Fore.CYAN}Timings:{Style.RESET_ALL}")
        for stage, seconds in report.timings.items():
            lines.append(f"  {stage}: {seconds:.3f}s")
    return '\n'.join(lines)


def cmd_analyze(args):
    """Analyze one graph specification file"""
    settings = _settings(args)
    spec_file = GraphSpecFile.load(args.file)
    engine = AnalysisEngine(settings)
    report = engine.analyze(spec_file, brute=not args.no_brute, connectivity=args.connectivity)

    if args.json:
        emit(report.to_json(stable=args.stable))
    else:
        if args.stable:
            report.timings = {}
        emit(format_report(report))


def cmd_family(args):
    """Emit a named family member as a spec file or edge list"""
    settings = _settings(args)
    params = parse_cli_params(args.name, args.params)
    graph = build_family(args.name, params, max_vertices=settings.max_construction_vertices)

    if args.emit == 'edges':
        emit('\n'.join(graph.edge_lines()))
    else:
        emit(GraphSpecFile.from_graph(graph).to_json())


def cmd_corpus(args):
    """List or run the built-in reproduction corpus"""
    settings = _settings(args)

    if not args.run:
        if args.json:
            emit(json.dumps([{'graph': e.name, 'family': e.family, 'params': e.params, 'us': e.us,
                              'predicted': e.predicted, 'aut': e.aut} for e in CORPUS], indent=2))
        else:
            emit('\n'.join(f"{e.name:<14} {e.family} {json.dumps(e.params)}" for e in CORPUS))
        return 0

    results = run_corpus(settings)
    failures = [r.name for r in results if not r.passed]

    if args.json:
        emit(json.dumps([r.to_dict() for r in results], indent=2))
    else:
        lines = [f"{Fore.CYAN}{'graph':<14} {'us':<6} {'predicted':>10} {'brute':>10}  verdict{Style.RESET_ALL}"]
        for r in results:
            color = Fore.GREEN if r.passed else Fore.RED
            lines.append(f"{r.name:<14} {str(r.us).lower():<6} {r.predicted:>10} {r.brute:>10}  "
                         f"{color}{r.verdict}{Style.RESET_ALL}")
            for reason in r.reasons:
                lines.append(f"    {Fore.RED}{reason}{Style.RESET_ALL}")
        passed = len(results) - len(failures)
        lines.append('')
        lines.append(f"{passed}/{len(results)} entries passed")
        emit('\n'.join(lines))

    if failures:
        raise CorpusMismatch(failures)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description='Automorphism groups of Cayley graphs on finite abelian groups',
        formatter_class=argparse.RawDescriptionHelpFormatter
    )

    subparsers = parser.add_subparsers(dest='command', help='Commands')

    # Analyze command
    parser_analyze = subparsers.add_parser('analyze', help='Analyze a graph specification file')
    parser_analyze.add_argument('file', help='JSON spec: {moduli, connection_set} or {family, params}')
    parser_analyze.add_argument('--json', action='store_true', help='Machine-readable output')
    parser_analyze.add_argument('--stable', action='store_true', help='Omit timings')
    parser_analyze.add_argument('--no-brute', action='store_true', help='Skip the exhaustive search')
    parser_analyze.add_argument('--connectivity', action='store_true', help='Compute connectivity')
    parser_analyze.add_argument('--max-vertices', type=int, help='Exhaustive search vertex cap')
    parser_analyze.add_argument('--workers', type=int, help='Search threads')
    parser_analyze.add_argument('--config', help='Alternative config.yaml')
    parser_analyze.set_defaults(func=cmd_analyze)

    # Family command
    parser_family = subparsers.add_parser('family', help='Emit a named graph family member')
    parser_family.add_argument('name', help=f"Family name: {', '.join(sorted(FAMILIES))}")
    parser_family.add_argument('params', nargs='*', help='Positional integers or one JSON object')
    parser_family.add_argument('--emit', choices=['spec', 'edges'], default='spec', help='Output format')
    parser_family.add_argument('--config', help='Alternative config.yaml')
    parser_family.set_defaults(func=cmd_family)

    # Corpus command
    parser_corpus = subparsers.add_parser('corpus', help='Reproduction corpus')
    parser_corpus.add_argument('--run', action='store_true', help='Run every entry')
    parser_corpus.add_argument('--json', action='store_true', help='Machine-readable output')
    parser_corpus.add_argument('--max-vertices', type=int, help='Exhaustive search vertex cap')
    parser_corpus.add_argument('--workers', type=int, help='Search threads')
    parser_corpus.add_argument('--config', help='Alternative config.yaml')
    parser_corpus.set_defaults(func=cmd_corpus)

    return parser


def main(argv=None):
    """Main CLI entry point"""
    parser = build_parser()

    # Parse arguments
    args = parser.parse_args(argv)

    if not args.command:
        parser.print_help()
        return 1

    if not getattr(args, 'json', False):
        print_banner()

    # Run command
    try:
        return args.func(args) or 0
    except KeyboardInterrupt:
        print(f"\n{Fore.YELLOW}Interrupted by user{Style.RESET_ALL}", file=sys.stderr)
        return 130
    except CayleyAutError as e:
        invariant = getattr(e, 'invariant', None)
        suffix = f" [invariant: {invariant}]" if invariant else ''
        print(f"{Fore.RED}[FAIL] {e}{suffix}{Style.RESET_ALL}", file=sys.stderr)
        return e.exit_code


if __name__ == '__main__':
    sys.exit(main())
