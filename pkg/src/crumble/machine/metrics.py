from dataclasses import dataclass, field
from enum import Enum
from types import MappingProxyType
from typing import Mapping, NamedTuple, Optional, Tuple


class TransitionLabel(Enum):
    BETA = "beta"
    IFT = "ift"
    IFF = "iff"
    IFE = "ife"
    APP_ERR = "app_err"
    SUB_VAR = "sub_var"
    SUB_L = "sub_l"
    SUB_IF = "sub_if"
    SEA = "sea"

    @property
    def is_principal(self) -> bool:
        return self in PRINCIPAL_LABELS


PRINCIPAL_LABELS = frozenset(
    {TransitionLabel.BETA, TransitionLabel.IFT, TransitionLabel.IFF, TransitionLabel.IFE, TransitionLabel.APP_ERR}
)


@dataclass(frozen=True)
class Metrics:
    counts: Mapping[TransitionLabel, int] = field(default_factory=dict)
    initial_term_size: int = 0
    initial_crumble_size: int = 0

    def __post_init__(self):
        object.__setattr__(self, "counts", MappingProxyType(dict(self.counts)))

    def count(self, label: TransitionLabel) -> int:
        return self.counts.get(label, 0)

    @property
    def principal_count(self) -> int:
        return sum(self.count(label) for label in PRINCIPAL_LABELS)

    @property
    def total_transitions(self) -> int:
        return sum(self.counts.values())

    @property
    def beta_like_count(self) -> int:
        """Transitions that may append an environment: β and the two branch selections."""
        return self.count(TransitionLabel.BETA) + self.count(TransitionLabel.IFT) + self.count(TransitionLabel.IFF)


class TraceEntry(NamedTuple):
    step: int
    label: TransitionLabel
    snapshot: Optional[str] = None


@dataclass(frozen=True)
class Trace:
    entries: Tuple[TraceEntry, ...] = ()

    @property
    def labels(self) -> Tuple[TransitionLabel, ...]:
        return tuple(entry.label for entry in self.entries)

    def __len__(self) -> int:
        return len(self.entries)
