from abc import ABCMeta, abstractmethod
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Optional

from chiralcoh.errors import ConfigError, MissingBetti
from chiralcoh.files import FixedPointData
from chiralcoh.lie import LieAlgebraData, abelian, builtin_algebra
from chiralcoh.localization import formulas
from chiralcoh.series import CharacterSeries, quotient


@dataclass
class LocalizationResult:
    """ This class stores the outcome of a localization scenario

    Attributes
    ----------
    scenario : str
        The scenario name
    series : dict
        Named character series, 'character' being the main one
    notes : dict
        Scenario-specific facts (component counts, flags, ...)

    """

    scenario: str
    series: Dict[str, CharacterSeries] = field(default_factory=dict)
    notes: Dict[str, Any] = field(default_factory=dict)

    @property
    def character(self) -> CharacterSeries:
        return self.series['character']


def group_algebra(name: str) -> LieAlgebraData:
    """ 'circle' and 'torusR' name tori; anything else is a built-in algebra. """
    if name == 'circle':
        return abelian(1)
    if name.startswith('torus') and name[len('torus'):].isdigit():
        return abelian(int(name[len('torus'):]))
    return builtin_algebra(name)


class BaseScenario(metaclass=ABCMeta):
    """
    This is the base class of the localization scenarios.

    It reads the classical input of a FixedPointData and is extended by one class per scenario, each implementing
    the structure theorem that applies to it.
    """

    scenario: str = None

    def __init__(self, data: FixedPointData, workers: int = None):
        """
        The class constructor.

        Parameters
        ----------
        data : FixedPointData
            The classical input of the scenario.

        workers : int
            Processes for engine computations of nonabelian group characters.

        """
        if data.scenario != self.scenario:
            raise ConfigError(f'{type(self).__name__} cannot run scenario {data.scenario}')
        self.data = data
        self.workers = workers
        self._characters = {}

    @property
    def p_max(self) -> int:
        return self.data.p_max

    @property
    def n_max(self) -> int:
        return self.data.n_max

    def group(self, position: int = 0) -> str:
        if position >= len(self.data.groups):
            raise ConfigError(f'scenario {self.scenario} needs at least {position + 1} group(s)')
        return self.data.groups[position]

    def group_character(self, name: str) -> CharacterSeries:
        """ χ(G) for a group name, computed once per scenario. """
        if name not in self._characters:
            self._characters[name] = formulas.hgc_character(group_algebra(name), self.p_max, self.n_max,
                                                            self.workers)
        return self._characters[name]

    def fixed(self, key: str = 'fixed') -> CharacterSeries:
        """ Poincaré polynomial of a fixed set from its Betti numbers.

        Raises
        ------
        MissingBetti
            If the descriptor does not list them.

        """
        return formulas.fixed_poincare(self.data.betti.get(key), self.p_max, self.n_max, key)

    def poincare(self, key: str, required: bool = True) -> Optional[CharacterSeries]:
        """ A classical Poincaré series given as a list of z-coefficients or as numerator/denominator lists.

        Raises
        ------
        MissingBetti
            If a required series is absent.

        """
        value = self.data.poincare.get(key)
        if value is None:
            if required:
                raise MissingBetti(f'classical series {key} is required by scenario {self.scenario}')
            return None

        if isinstance(value, dict):
            numerator = self._polynomial(value.get('numerator', [1]))
            denominator = self._polynomial(value.get('denominator', [1]))
            try:
                return quotient(numerator, denominator)
            except ValueError as e:
                raise ConfigError(f'classical series {key}: {e}')
        return self._polynomial(value)

    def _polynomial(self, coefficients) -> CharacterSeries:
        try:
            terms = {(j, 0): Fraction(c) for j, c in enumerate(coefficients) if Fraction(c)}
        except (TypeError, ValueError) as e:
            raise ConfigError(f'malformed coefficient list: {e}')
        return CharacterSeries(terms, self.p_max, self.n_max)

    @abstractmethod
    def run(self) -> LocalizationResult:
        """ Compute the characters of the scenario. """
        pass
