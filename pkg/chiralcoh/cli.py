import json
import os
import sys

from argparse import ArgumentParser, ArgumentTypeError, Namespace
from dataclasses import dataclass, field
from datetime import datetime
from typing import Dict, List, Optional, Tuple

from chiralcoh.cohomology import cohomology
from chiralcoh.complexes.base import ComplexDescriptor, PINNING_WINDOW, TENSOR_PINNING_WINDOW
from chiralcoh.complexes.cdr import build_cdr, tensor_complex
from chiralcoh.complexes.weil import build_weil, small_weil
from chiralcoh.errors import ConfigError, TruncationOverflow, VerificationFailure
from chiralcoh.files import CharacterSeriesDecoder, CharacterSeriesEncoder, CohomologyTable, CohomologyTableDecoder, \
    CohomologyTableEncoder, SCENARIOS, dump, fixed_point_data, load_descriptor, series_frame
from chiralcoh.lie import LieAlgebraData, Representation, builtin_algebra, builtin_representation, load_algebra, \
    load_representation
from chiralcoh.localization.formulas import BRANCHES, cross_check, hgc_character
from chiralcoh.localization.scenarios import get_scenario
from chiralcoh.series import CharacterSeries, divides, quotient
from chiralcoh.verification import SUITES, default_seed, run_suite

VERSION = '0.1.0'

COMPLEXES = ('weil', 'weil-q', 'small-weil', 'tensor')

# weil-q names W(g)⊗Q_poly(V) after its factors
COMPLEX_ALIASES = {'weil-q': 'tensor'}

FORMATS = ('json', 'csv', 'text')

EXIT_SUCCESS = 0
EXIT_VERIFICATION = 1
EXIT_CONFIG = 2
EXIT_BUDGET = 3


def valid_dir(x: str) -> str:
    """
    Check if x is a directory and exists
    :param x: a path
    :return: the path if exists; raise an ArgumentTypeError otherwise
    """
    if not os.path.isdir(x):
        raise ArgumentTypeError('Insert a valid path')

    return x


def valid_file(x: str) -> str:
    """
    Check if x is a file and exists
    :param x: a path
    :return: the path if exists; raise an ArgumentTypeError otherwise
    """
    if not os.path.isfile(x):
        raise ArgumentTypeError('Insert a valid path')

    return x


def valid_branches(x: str) -> List[str]:
    """
    Check if x is a comma-separated list of sphere branches
    :param x: e.g. 'minus2,minus1'
    :return: the list of branches; raise an ArgumentTypeError otherwise
    """
    branches = [b.strip() for b in x.split(',') if b.strip()]
    for branch in branches:
        if branch not in BRANCHES:
            raise ArgumentTypeError(f'Insert branches among {", ".join(BRANCHES)}')

    return branches


def valid_betti(x: str) -> tuple:
    """
    Check if x has the form KEY=b0,b1,...
    :param x: e.g. 'fixed=1,0,1'
    :return: the pair (key, betti numbers); raise an ArgumentTypeError otherwise
    """
    key, _, values = x.partition('=')
    try:
        numbers = [int(v) for v in values.split(',') if v.strip()]
    except ValueError:
        numbers = None
    if not key or not numbers:
        raise ArgumentTypeError('Insert Betti numbers as KEY=b0,b1,...')

    return key, numbers


def now() -> str:
    return f'{datetime.now().hour}:{datetime.now().minute:02d}'


def log(verbose: bool, message: str):
    if verbose:
        print(f'{message} [{now()}]')


@dataclass
class RunConfig:
    """ This class stores a validated command-line configuration

    Attributes
    ----------
    command : str
        The subcommand
    algebra, rep : str
        Built-in names or descriptor paths
    complex : str
        One of COMPLEXES, aliases resolved
    p_min, p_max, n_max : int
        The truncation
    format : str
        One of FORMATS
    dest : str
        Destination folder, or None for stdout
    workers : int
        Parallelism width
    seed : int
        Seed of the probe sampler
    verbose : bool
        Print progress lines

    """

    command: str
    algebra: Optional[str] = None
    rep: Optional[str] = None
    complex: str = 'weil'
    p_min: int = 0
    p_max: int = 6
    n_max: int = 2
    format: str = 'text'
    dest: Optional[str] = None
    workers: Optional[int] = None
    seed: Optional[int] = None
    verbose: bool = False
    options: Dict[str, object] = field(default_factory=dict)

    def __post_init__(self):
        self.complex = COMPLEX_ALIASES.get(self.complex, self.complex)
        if self.complex not in COMPLEXES:
            raise ConfigError(f'unknown complex {self.complex}')
        if self.p_min > self.p_max:
            raise ConfigError(f'pmin = {self.p_min} exceeds pmax = {self.p_max}')
        if self.n_max < 0:
            raise ConfigError('nmax must be nonnegative')
        if self.workers is not None and self.workers < 1:
            raise ConfigError('workers must be positive')
        if self.format not in FORMATS:
            raise ConfigError(f'unknown format {self.format}')
        if self.dest is not None and not os.path.isdir(self.dest):
            raise ConfigError(f'{self.dest} is not a directory')

    @classmethod
    def from_args(cls, args: Namespace) -> 'RunConfig':
        known = {'command', 'algebra', 'rep', 'complex', 'p_min', 'p_max', 'n_max', 'format', 'dest', 'workers',
                 'seed', 'verbose'}
        values = {k: v for k, v in vars(args).items() if k in known and v is not None}
        options = dict(vars(args))
        return cls(options=options, **values)


def resolve_algebra(value: str) -> LieAlgebraData:
    """ A built-in algebra name or the path to an algebra descriptor. """
    if value is None:
        raise ConfigError('an algebra is required (--algebra)')
    if os.path.isfile(value):
        return load_algebra(load_descriptor(value))
    return builtin_algebra(value)


def resolve_representation(value: str, lie: LieAlgebraData) -> Representation:
    if value is None:
        raise ConfigError('a representation is required (--rep)')
    if os.path.isfile(value):
        return load_representation(load_descriptor(value), lie)
    return builtin_representation(value, lie)


def emit(config: RunConfig, text: str, filename: str):
    if config.dest:
        path = os.path.join(config.dest, filename)
        with open(path, 'w') as f:
            f.write(text)
        log(config.verbose, f'Saved at {path}')
    else:
        print(text)


def table_text(table: CohomologyTable) -> str:
    lines = [f'{table.complex}: p in [{table.p_min}, {table.p_max}], n <= {table.n_max}']
    for entry in table.entries:
        lines.append(f'H^{entry.p}[{entry.n}] = {entry.dim}')
    lines.append(f'character: {table.character().to_text()}')
    return '\n'.join(lines)


def series_text(series: CharacterSeries) -> str:
    return series.to_text()


def set_common_arguments(parser, truncation: bool = True):
    if truncation:
        parser.add_argument('--pmin', action='store', dest='p_min', type=int, default=0,
                            help='lowest cohomological degree (default: %(default)s)')
        parser.add_argument('--pmax', action='store', dest='p_max', type=int, default=6,
                            help='highest cohomological degree (default: %(default)s)')
        parser.add_argument('--nmax', action='store', dest='n_max', type=int, default=2,
                            help='highest conformal weight (default: %(default)s)')

    parser.add_argument('--format', action='store', dest='format', type=str, choices=FORMATS, default='text',
                        help='output format (default: %(default)s)')

    parser.add_argument('--dest', action='store', dest='dest', type=valid_dir,
                        help='destination folder for the results (default: stdout)')

    parser.add_argument('--workers', action='store', dest='workers', type=int,
                        help='number of processes (default: $CHIRALCOH_WORKERS or 1)')

    parser.add_argument('--verbose', action='store_true', dest='verbose', default=False, help='show log')


def set_cohomology_parser(subparsers):
    parser = subparsers.add_parser('cohomology', help='Compute basic cohomology tables of a complex')

    parser.add_argument('--algebra', action='store', dest='algebra', type=str, required=True,
                        help='a built-in algebra (abelianN, sl2, sl2xsl2, sl3) or the path to a descriptor')

    parser.add_argument('--rep', action='store', dest='rep', type=str,
                        help='a built-in representation (fundamental, adjoint) or the path to a descriptor')

    parser.add_argument('--complex', action='store', dest='complex', type=str, choices=COMPLEXES, default='weil',
                        help='the complex; weil-q is an alias of tensor (default: %(default)s)')

    parser.add_argument('--modular', action='store_true', dest='modular', default=False,
                        help='cross-check every rank modulo several primes')

    parser.add_argument('--representatives', action='store_true', dest='representatives', default=False,
                        help='include representative cocycles (json only)')

    set_common_arguments(parser)


def set_localize_parser(subparsers):
    parser = subparsers.add_parser('localize', help='Compute characters from the localization theorems')

    parser.add_argument('--scenario', action='store', dest='scenario', type=str, choices=SCENARIOS,
                        help='the scenario (required unless --data names one)')

    parser.add_argument('--data', action='store', dest='data', type=valid_file,
                        help='the path to a fixed-point descriptor (JSON or YAML)')

    parser.add_argument('--groups', action='store', dest='groups', type=str,
                        help='comma-separated acting groups: built-in algebras, circle or torusR')

    parser.add_argument('--betti', action='append', dest='betti', type=valid_betti, default=[],
                        help='Betti numbers of a fixed set, as KEY=b0,b1,... (repeatable)')

    parser.add_argument('--c0', action='store', dest='c0', type=int,
                        help='fixed-set components of the first sphere (sphere-seq)')

    parser.add_argument('--branches', action='store', dest='branches', type=valid_branches, default=[],
                        help='comma-separated sphere branches, each minus2 or minus1 (sphere-seq)')

    parser.add_argument('--dim', action='store', dest='dim', type=int, default=6,
                        help='sphere dimension (sphere-seq, default: %(default)s)')

    parser.add_argument('--pmax', action='store', dest='p_max', type=int, help='highest z-degree')
    parser.add_argument('--nmax', action='store', dest='n_max', type=int, help='highest q-degree')

    set_common_arguments(parser, truncation=False)


def set_verify_parser(subparsers):
    parser = subparsers.add_parser('verify', help='Run verification suites')

    parser.add_argument('--algebra', action='store', dest='algebra', type=str, required=True,
                        help='a built-in algebra or the path to a descriptor')

    parser.add_argument('--rep', action='store', dest='rep', type=str,
                        help='a built-in representation or the path to a descriptor')

    parser.add_argument('--suite', action='store', dest='suite', type=str, choices=SUITES + ('all',),
                        default='pinning', help='the suite to run (default: %(default)s)')

    parser.add_argument('--seed', action='store', dest='seed', type=int,
                        help='seed of the probe sampler (default: $CHIRALCOH_SEED or 20240101)')

    for position, (flag, dest, what) in enumerate((('--pmin', 'p_min', 'lowest degree'),
                                                    ('--pmax', 'p_max', 'highest degree'),
                                                    ('--nmax', 'n_max', 'highest weight'))):
        parser.add_argument(flag, action='store', dest=dest, type=int,
                            help=f'{what} of the checked pieces (default: {PINNING_WINDOW[position]} for W(g) and '
                                 f'Q_poly(V), {TENSOR_PINNING_WINDOW[position]} for the tensor complex)')

    set_common_arguments(parser, truncation=False)


def set_character_parser(subparsers):
    parser = subparsers.add_parser('character', help='Character series of groups and series arithmetic')

    parser.add_argument('--algebra', action='store', dest='algebra', type=str,
                        help='compute the character of the chiral equivariant cohomology of a point')

    parser.add_argument('--series', action='store', dest='series', type=valid_file,
                        help='start from a series in JSON instead')

    parser.add_argument('--times', action='store', dest='times', type=valid_file,
                        help='multiply by a series in JSON')

    parser.add_argument('--divide', action='store', dest='divide', type=valid_file,
                        help='divide by a series in JSON (constant term 1)')

    parser.add_argument('--positive', action='store_true', dest='positive', default=False,
                        help='keep the positive-weight part only')

    set_common_arguments(parser)


def set_crosscheck_parser(subparsers):
    parser = subparsers.add_parser('crosscheck', help='Compare an engine table with a formula series')

    parser.add_argument(action='store', dest='table', type=valid_file,
                        help='the path to a cohomology table in JSON')

    parser.add_argument('--series', action='store', dest='series', type=valid_file,
                        help='the path to a series in JSON')

    parser.add_argument('--algebra', action='store', dest='algebra', type=str,
                        help='compare with the character of this algebra instead')

    parser.add_argument('--positive-only', action='store_true', dest='positive_only', default=False,
                        help='compare positive-weight parts only')

    set_common_arguments(parser, truncation=False)


def get_parser():
    description = 'Exact computation of chiral equivariant cohomology: semi-infinite Weil complexes, chiral de Rham ' \
                  'complexes of linear representations and positive-weight localization.'

    parser = ArgumentParser(prog='chiral-coh', description=description)
    parser.add_argument('-v', '--version', action='version', version='%(prog)s ' + VERSION)
    subparsers = parser.add_subparsers(dest='command')

    set_cohomology_parser(subparsers)
    set_localize_parser(subparsers)
    set_verify_parser(subparsers)
    set_character_parser(subparsers)
    set_crosscheck_parser(subparsers)

    return parser


def build_complex(config: RunConfig) -> ComplexDescriptor:
    lie = resolve_algebra(config.algebra)

    if config.complex == 'small-weil':
        return small_weil(lie)

    rep = resolve_representation(config.rep, lie) if config.complex == 'tensor' else None

    log(config.verbose, f'Building W({lie.name}) and running its pinning suite')
    W = build_weil(lie)
    if config.complex == 'weil':
        return W

    log(config.verbose, f'Building Q_poly of a {rep.dim}-dimensional representation')
    return tensor_complex(W, build_cdr(lie, rep))


def run_cohomology(config: RunConfig) -> int:
    C = build_complex(config)
    log(config.verbose, f'Computing H^p[n] of {C.name} for p in [{config.p_min}, {config.p_max}], n <= {config.n_max}')

    table = cohomology(C, (config.p_min, config.p_max), config.n_max,
                       want_representatives=bool(config.options.get('representatives')), workers=config.workers,
                       modular=bool(config.options.get('modular')))

    if config.format == 'json':
        emit(config, dump(table, CohomologyTableEncoder), 'cohomology.json')
    elif config.format == 'csv':
        emit(config, table.to_csv(), 'cohomology.csv')
    else:
        emit(config, table_text(table), 'cohomology.txt')
    return EXIT_SUCCESS


def localization_descriptor(config: RunConfig) -> dict:
    options = config.options
    if options.get('data'):
        descriptor = load_descriptor(options['data'])
        if not isinstance(descriptor, dict):
            raise ConfigError(f'{options["data"]} does not hold a fixed-point descriptor')
    else:
        descriptor = {}

    if options.get('scenario'):
        descriptor['scenario'] = options['scenario']
    if options.get('groups'):
        descriptor['groups'] = [g.strip() for g in options['groups'].split(',') if g.strip()]
    for key, numbers in options.get('betti', []):
        descriptor.setdefault('betti', {})[key] = numbers
    if options.get('c0') is not None:
        descriptor['sphere'] = {'c0': options['c0'], 'branches': options.get('branches', []),
                                'dim': options.get('dim', 6)}
    if options.get('p_max') is not None:
        descriptor['p_max'] = options['p_max']
    if options.get('n_max') is not None:
        descriptor['n_max'] = options['n_max']
    return descriptor


def run_localize(config: RunConfig) -> int:
    data = fixed_point_data(localization_descriptor(config))
    log(config.verbose, f'Running scenario {data.scenario} up to z^{data.p_max} q^{data.n_max}')
    result = get_scenario(data, config.workers).run()

    if config.format == 'json':
        text = json.dumps({'scenario': result.scenario, 'series': result.series, 'notes': result.notes},
                          cls=CharacterSeriesEncoder, indent=2)
        emit(config, text, 'localization.json')
    elif config.format == 'csv':
        emit(config, series_frame(result.character).to_csv(index=False), 'localization.csv')
    else:
        lines = [f'scenario: {result.scenario}']
        for key, value in result.notes.items():
            lines.append(f'{key}: {value}')
        for name, series in result.series.items():
            lines.append(f'{name}: {series_text(series)}')
        emit(config, '\n'.join(lines), 'localization.txt')
    return EXIT_SUCCESS


def verify_window(config: RunConfig) -> Optional[Tuple[int, int, int]]:
    """ None unless a bound was given; missing bounds are taken from PINNING_WINDOW. """
    given = tuple(config.options.get(key) for key in ('p_min', 'p_max', 'n_max'))
    if all(value is None for value in given):
        return None
    return tuple(default if value is None else value for value, default in zip(given, PINNING_WINDOW))


def run_verify(config: RunConfig) -> int:
    lie = resolve_algebra(config.algebra)
    rep = resolve_representation(config.rep, lie) if config.rep else None
    seed = default_seed() if config.seed is None else config.seed
    window = verify_window(config)
    suites = SUITES if config.options.get('suite') == 'all' else (config.options.get('suite', 'pinning'),)

    reports = []
    for suite in suites:
        if suite == 'homotopy' and rep is None:
            if len(suites) > 1:
                continue
        log(config.verbose, f'Running suite {suite} on {lie.name} (seed {seed})')
        reports.append(run_suite(suite, lie, rep, seed=seed, window=window, workers=config.workers))

    if config.format == 'json':
        text = json.dumps([{'suite': r.suite, 'algebra': r.algebra, 'seed': r.seed, 'passed': r.passed,
                            'results': [{'name': c.name, 'passed': c.passed, 'detail': c.detail} for c in r.results],
                            'notes': {k: str(v) for k, v in r.notes.items()}} for r in reports], indent=2)
    else:
        text = '\n'.join(r.to_text() for r in reports)
    emit(config, text, 'verification.json' if config.format == 'json' else 'verification.txt')

    return EXIT_SUCCESS if all(r.passed for r in reports) else EXIT_VERIFICATION


def read_series(path: str) -> CharacterSeries:
    with open(path, 'r') as f:
        series = json.load(f, cls=CharacterSeriesDecoder)
    if not isinstance(series, CharacterSeries):
        raise ConfigError(f'{path} does not hold a character series')
    return series


def run_character(config: RunConfig) -> int:
    options = config.options
    if options.get('series'):
        series = read_series(options['series'])
    elif config.algebra:
        lie = resolve_algebra(config.algebra)
        log(config.verbose, f'Computing the character of {lie.name} up to z^{config.p_max} q^{config.n_max}')
        series = hgc_character(lie, config.p_max, config.n_max, config.workers)
    else:
        raise ConfigError('character needs --algebra or --series')

    if options.get('times'):
        series = series * read_series(options['times'])
    if options.get('divide'):
        divisor = read_series(options['divide'])
        try:
            if not divides(divisor, series):
                log(config.verbose, 'The quotient has coefficients that are not nonnegative integers')
            series = quotient(series, divisor)
        except ValueError as e:
            raise ConfigError(str(e))
    if options.get('positive'):
        series = series.positive_part()

    if config.format == 'json':
        emit(config, dump(series, CharacterSeriesEncoder), 'character.json')
    elif config.format == 'csv':
        emit(config, series_frame(series).to_csv(index=False), 'character.csv')
    else:
        emit(config, series_text(series), 'character.txt')
    return EXIT_SUCCESS


def run_crosscheck(config: RunConfig) -> int:
    options = config.options
    with open(options['table'], 'r') as f:
        table = json.load(f, cls=CohomologyTableDecoder)
    if not isinstance(table, CohomologyTable):
        raise ConfigError(f'{options["table"]} does not hold a cohomology table')

    if options.get('series'):
        series = read_series(options['series'])
    elif config.algebra:
        series = hgc_character(resolve_algebra(config.algebra), table.p_max, table.n_max, config.workers)
    else:
        raise ConfigError('crosscheck needs --series or --algebra')

    report = cross_check(table, series, positive_only=bool(options.get('positive_only')))
    if config.format == 'json':
        text = json.dumps({'complex': report.complex, 'matches': report.matches,
                           'mismatches': [[p, n, str(a), str(b)] for p, n, a, b in report.mismatches]}, indent=2)
    else:
        lines = [f'{report.complex}: ' + ('match' if report.matches else f'{len(report.mismatches)} mismatch(es)')]
        lines.extend(f'z^{p} q^{n}: engine {a}, formula {b}' for p, n, a, b in report.mismatches)
        text = '\n'.join(lines)
    emit(config, text, 'crosscheck.json' if config.format == 'json' else 'crosscheck.txt')
    return EXIT_SUCCESS if report.matches else EXIT_VERIFICATION


COMMANDS = {
    'cohomology': run_cohomology,
    'localize': run_localize,
    'verify': run_verify,
    'character': run_character,
    'crosscheck': run_crosscheck,
}


def run(config: RunConfig) -> int:
    """ Dispatch a validated configuration; library errors propagate to main. """
    log(config.verbose, f'{config.command} started')
    status = COMMANDS[config.command](config)
    log(config.verbose, f'{config.command} completed')
    return status


def main():
    parser = get_parser()
    args = parser.parse_args()
    if args.command is None:
        parser.print_help()
        exit(EXIT_CONFIG)

    seed = getattr(args, 'seed', None)
    try:
        status = run(RunConfig.from_args(args))
    except ConfigError as e:
        print(f'configuration error: {e}', file=sys.stderr)
        status = EXIT_CONFIG
    except VerificationFailure as e:
        print(f'verification failure: {e} (seed {default_seed() if seed is None else seed})', file=sys.stderr)
        status = EXIT_VERIFICATION
    except TruncationOverflow as e:
        print(f'budget exceeded: {e}', file=sys.stderr)
        status = EXIT_BUDGET

    exit(status)
