import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Union

import pandas as pd
import yaml

from chiralcoh.errors import ConfigError
from chiralcoh.fock import State, format_state
from chiralcoh.series import CharacterSeries


def encode_fraction(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f'{x.numerator}/{x.denominator}'


def decode_fraction(text: Union[str, int]) -> Fraction:
    return Fraction(text)


@dataclass
class CohomologyEntry:
    """ This class stores the dimension of one bigraded piece of cohomology

    Attributes
    ----------
    p : int
        The cohomological degree
    n : int
        The conformal weight
    dim : int
        dim H^p[n]
    basic : int
        The dimension of the basic cochains in the piece
    representatives : list
        Representative cocycles, as states (or as text once decoded), when requested

    """

    p: int
    n: int
    dim: int
    basic: int = 0
    representatives: Optional[List[Union[State, str]]] = None


@dataclass
class CohomologyTable:
    """ This class stores a truncated cohomology table of a complex

    Attributes
    ----------
    complex : str
        The complex identifier
    p_min, p_max : int
        The range of degrees
    n_max : int
        The highest weight
    entries : list
        One CohomologyEntry per (p, n) in the truncation

    """

    complex: str
    p_min: int
    p_max: int
    n_max: int
    entries: List[CohomologyEntry] = field(default_factory=list)

    def dim(self, p: int, n: int) -> int:
        for entry in self.entries:
            if entry.p == p and entry.n == n:
                return entry.dim
        raise KeyError(f'H^{p}[{n}] is outside the table')

    def character(self) -> CharacterSeries:
        coefficients = {(e.p, e.n): Fraction(e.dim) for e in self.entries if e.dim}
        return CharacterSeries(coefficients, self.p_max, self.n_max, self.p_min)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame([{'p': e.p, 'n': e.n, 'dim': e.dim} for e in self.entries], columns=['p', 'n', 'dim'])

    def to_csv(self, path: str = None) -> Optional[str]:
        return self.to_frame().to_csv(path, index=False)


class CohomologyTableEncoder(json.JSONEncoder):
    def default(self, o):
        if isinstance(o, CohomologyTable):
            return {
                "complex": o.complex,
                "trunc": [o.p_min, o.p_max, o.n_max],
                "entries": o.entries,
                "series": o.character().to_text()
            }

        if isinstance(o, CohomologyEntry):
            entry = {"p": o.p, "n": o.n, "dim": o.dim, "basic": o.basic}
            if o.representatives is not None:
                entry["representatives"] = [r if isinstance(r, str) else format_state(r) for r in o.representatives]
            return entry

        return json.JSONEncoder.default(self, o)


class CohomologyTableDecoder(json.JSONDecoder):
    def __init__(self, *args, **kwargs):
        json.JSONDecoder.__init__(self, object_hook=self.to_object, *args, **kwargs)

    def to_object(self, o):
        if type(o) == dict and "entries" in o:
            p_min, p_max, n_max = o["trunc"]
            return CohomologyTable(complex=o["complex"], p_min=p_min, p_max=p_max, n_max=n_max,
                                   entries=o["entries"])
        if type(o) == dict and "dim" in o:
            return CohomologyEntry(p=o["p"], n=o["n"], dim=o["dim"], basic=o.get("basic", 0),
                                   representatives=o.get("representatives"))
        return o


class CharacterSeriesEncoder(json.JSONEncoder):
    def default(self, o):
        if isinstance(o, CharacterSeries):
            return {
                "p_min": o.p_min,
                "p_max": o.p_max,
                "n_max": o.n_max,
                "coefficients": [[p, n, encode_fraction(c)] for (p, n), c in o],
                "text": o.to_text()
            }

        return json.JSONEncoder.default(self, o)


class CharacterSeriesDecoder(json.JSONDecoder):
    def __init__(self, *args, **kwargs):
        json.JSONDecoder.__init__(self, object_hook=self.to_object, *args, **kwargs)

    def to_object(self, o):
        if type(o) == dict and "coefficients" in o:
            coefficients = {(p, n): decode_fraction(c) for p, n, c in o["coefficients"]}
            return CharacterSeries(coefficients, p_max=o["p_max"], n_max=o["n_max"], p_min=o.get("p_min", 0))
        return o


def series_frame(series: CharacterSeries) -> pd.DataFrame:
    return pd.DataFrame([{'p': p, 'n': n, 'coefficient': encode_fraction(c)} for (p, n), c in series],
                        columns=['p', 'n', 'coefficient'])


def load_descriptor(path: str) -> Any:
    """ Read a JSON or YAML descriptor file.

    Raises
    ------
    ConfigError
        If the file does not exist or does not parse.

    """
    if not os.path.isfile(path):
        raise ConfigError(f'{path} does not exist')

    try:
        with open(path, 'r') as f:
            return yaml.safe_load(f)
    except yaml.YAMLError as e:
        raise ConfigError(f'{path} does not parse: {e}')


def dump(o: Any, cls, path: str = None) -> str:
    """ Serialize an artifact with its encoder, to ``path`` when given. """
    text = json.dumps(o, cls=cls, indent=2)
    if path:
        with open(path, 'w') as f:
            f.write(text)
    return text


SCENARIOS = ('simple', 'circle', 'product-simple', 'torus-cp2', 'homogeneous', 'q-structure', 'sphere-seq')


@dataclass
class FixedPointData:
    """ This class stores the classical input of a localization scenario

    Attributes
    ----------
    scenario : str
        One of SCENARIOS
    p_max, n_max : int
        The truncation of every series computed from the data
    groups : list
        The acting groups: built-in algebra names, or 'torusR' for a rank-R torus
    betti : dict
        Betti numbers of fixed sets, e.g. {"fixed": [1, 0, 1]}
    poincare : dict
        Classical Poincaré series, each a list of z-coefficients or {"numerator": [...], "denominator": [...]}
    sphere : dict
        {"c0", "branches", "dim", "betti"} for the sphere family
    kernel : dict
        {"k0_rank"} (rank of the torus K0 acting trivially, 0 when the kernel is finite)

    """

    scenario: str
    p_max: int = 8
    n_max: int = 2
    groups: List[str] = field(default_factory=list)
    betti: Dict[str, List[int]] = field(default_factory=dict)
    poincare: Dict[str, Any] = field(default_factory=dict)
    sphere: Dict[str, Any] = field(default_factory=dict)
    kernel: Dict[str, Any] = field(default_factory=dict)


class FixedPointDataEncoder(json.JSONEncoder):
    def default(self, o):
        if isinstance(o, FixedPointData):
            return {
                "scenario": o.scenario,
                "p_max": o.p_max,
                "n_max": o.n_max,
                "groups": o.groups,
                "betti": o.betti,
                "poincare": o.poincare,
                "sphere": o.sphere,
                "kernel": o.kernel
            }

        return json.JSONEncoder.default(self, o)


class FixedPointDataDecoder(json.JSONDecoder):
    def __init__(self, *args, **kwargs):
        json.JSONDecoder.__init__(self, object_hook=self.to_object, *args, **kwargs)

    def to_object(self, o):
        if type(o) == dict and "scenario" in o:
            return fixed_point_data(o)
        return o


def fixed_point_data(descriptor: dict) -> FixedPointData:
    """ Build FixedPointData from a parsed JSON/YAML descriptor.

    Raises
    ------
    ConfigError
        If the scenario is unknown or a field has the wrong shape.

    """
    if not isinstance(descriptor, dict) or descriptor.get('scenario') not in SCENARIOS:
        raise ConfigError(f'a fixed-point descriptor needs a scenario among {", ".join(SCENARIOS)}')

    try:
        return FixedPointData(scenario=descriptor['scenario'],
                              p_max=int(descriptor.get('p_max', 8)),
                              n_max=int(descriptor.get('n_max', 2)),
                              groups=[str(g) for g in descriptor.get('groups', [])],
                              betti={str(k): [int(b) for b in v] for k, v in descriptor.get('betti', {}).items()},
                              poincare=dict(descriptor.get('poincare', {})),
                              sphere=dict(descriptor.get('sphere', {})),
                              kernel=dict(descriptor.get('kernel', {})))
    except (TypeError, ValueError, AttributeError) as e:
        raise ConfigError(f'malformed fixed-point descriptor: {e}')
