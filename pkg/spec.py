"""Homomorphism lattice API: shared types, errors, budgets and checks."""

import enum
from typing import (Any, Callable, Dict, FrozenSet, Iterable, List, NamedTuple,
                    Optional, Sequence, Tuple)

import abc


class ExitCode(enum.IntEnum):
  OK = 0
  CHECK_FAILED = 1
  USAGE = 2
  BUDGET = 3
  NO_TOP = 4


class UpsetOrdering(enum.Enum):
  SUPERSET = 'superset'
  SUBSET = 'subset'


# Elements of a universe are always 0..n-1.
Element = int
ElementSet = FrozenSet[Element]
# A flat row-major operation table of length n ** arity.
Table = Sequence[int]
# A map between universes, given by the image of each source element.
Mapping = Tuple[int, ...]
# A covering chain a_1 < ... < a_k as poset indices, a_k maximal.
Word = Tuple[int, ...]
OpSpec = Tuple[str, int]
Timings = Dict[str, float]

DEFAULT_SUBUNIVERSE_BUDGET = 100_000
DEFAULT_CONGRUENCE_BUDGET = 100_000
DEFAULT_DOWNSET_BUDGET = 1_000_000
DEFAULT_WORD_BUDGET = 100_000
# Largest product algebra built by the product-law checks. A ternary table on
# m elements has m ** 3 entries.
DEFAULT_PRODUCT_BUDGET = 64
# all_subuniverses scans every subset up to this universe size.
SUBSET_SCAN_LIMIT = 8

SYNTH_GENERATOR = 'synth'
TOP_LABEL = '⊤'


class HomlatError(Exception):
  """Base class of every error raised by the library."""


class TableLengthError(HomlatError, ValueError):
  pass


class EntryRangeError(HomlatError, ValueError):
  pass


class DuplicateOpNameError(HomlatError, ValueError):
  pass


class SignatureMismatchError(HomlatError, ValueError):
  pass


class NotCompatibleError(HomlatError, ValueError):
  pass


class NameClashError(HomlatError, ValueError):
  pass


class NullaryPresentError(HomlatError, ValueError):
  pass


class NotMonounaryError(HomlatError, ValueError):
  pass


class NotAGroupError(HomlatError, ValueError):
  pass


class NotASubgroupError(HomlatError, ValueError):
  pass


class NotJoinClosedError(HomlatError, ValueError):
  pass


class NotAllNamedError(HomlatError, ValueError):
  pass


class NoNullariesError(HomlatError, ValueError):
  pass


class EmptyPosetError(HomlatError, ValueError):
  pass


class NoTopError(HomlatError, ValueError):
  pass


class NotOrderPreservingError(HomlatError, ValueError):
  pass


class NotQuasiOrderError(HomlatError, ValueError):
  pass


class NotALatticeError(HomlatError, ValueError):
  pass


class CyclicCoversError(HomlatError, ValueError):
  pass


class RedundantCoverError(HomlatError, ValueError):
  pass


class ParseError(HomlatError, ValueError):
  pass


class BudgetExceededError(HomlatError):
  """A configured cap on an enumeration was hit; results are never truncated."""

  def __init__(self, what: str, budget: int):
    super().__init__(f'{what} exceeded the budget of {budget}')
    self.what = what
    self.budget = budget


class NoTopInPError(HomlatError):
  """The sub-hom poset has no top, so the input is not quasi-primal."""


class CheckResult(NamedTuple):
  name: str
  passed: bool
  detail: str = ''


class Check(metaclass=abc.ABCMeta):
  """A named verification pipeline run by `homlat verify <name>`."""

  @abc.abstractproperty
  def name(self) -> str:
    """The registry name of the check."""

  @abc.abstractmethod
  def default_config(self) -> Dict[str, Any]:
    """The parameters used when no config file is given."""

  @abc.abstractmethod
  def run(
      self,
      config: Dict[str, Any],
      budget: Optional[int] = None,
      num_workers: int = 1) -> List[CheckResult]:
    """Run every case of the check and return one result per case.

    Evaluation stops at the first failing case; the failing result is the last
    element of the returned list.
    """

  def run_cases(
      self,
      cases: Iterable[Tuple[str, Callable[[], Tuple[bool, str]]]]
  ) -> List[CheckResult]:
    """Evaluate (name, case) pairs in order until the first failure."""
    results = []
    for case_name, case in cases:
      passed, detail = case()
      results.append(CheckResult(f'{self.name}/{case_name}', passed, detail))
      if not passed:
        break
    return results
