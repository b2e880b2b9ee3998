"""Interactive game sessions: a phase machine over single coincidence runs.

A session walks Created -> HostPrepared -> PlayerChosen -> DoorOpened ->
BetPlaced -> Resolved.  The host secretly prepares prize amplitudes and a
door policy; the player shapes their choice amplitudes and, once the doors
open, bets on switch or stay.  Resolving samples one coincidence (i, j)
from the final box-pair distribution; the bet wins on an off-diagonal pair
for switch and a diagonal pair for stay.  After Resolved a new HostPrepare
starts the next round, keeping the running score.
"""

import itertools
import math
import secrets
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .core import (
    HALF_PI,
    PROJECTOR_DOORS,
    SEMICLASSICAL_ANGLES,
    DoorAngles,
    RotatorAngles,
    player_box_angles,
    prize_box_angles,
)
from .exceptions import (
    DegenerateDoorOpening,
    IllegalPhaseTransition,
    InvalidAngles,
    InvalidWeights,
)
from .noise import PauliWeights, channel_input, detection_map, pauli_channel

PHASES = ("Created", "HostPrepared", "PlayerChosen", "DoorOpened", "BetPlaced", "Resolved")
BETS = ("switch", "stay")

# Uniform-superposition rotator pairs (the semiclassical settings).
UNIFORM_PRIZE = (SEMICLASSICAL_ANGLES.theta_b1, SEMICLASSICAL_ANGLES.theta_b2)
UNIFORM_CHOICE = (SEMICLASSICAL_ANGLES.theta_a1, SEMICLASSICAL_ANGLES.theta_a2)

# Door presets tuned for or against the player (switch-surface extrema).
HELP_ALICE_DOOR = (0.0, HALF_PI)
HURT_ALICE_DOOR = (HALF_PI, HALF_PI)
HURT_ALICE_DOOR_ENTANGLED = (math.pi / 20, math.pi / 4)


@dataclass(frozen=True)
class HostStrategy:
    """The host's hidden plan: prize amplitudes plus a door policy.

    prize: "uniform", "classical-box-J" (J in 1..3) or a (theta_b1,
    theta_b2) pair.  door: "random-projector", "help-alice", "hurt-alice"
    or a fixed (phi1, phi2) pair.
    """

    prize: object = "uniform"
    door: object = "random-projector"

    def prize_angles(self):
        if isinstance(self.prize, str):
            if self.prize == "uniform":
                return UNIFORM_PRIZE
            if self.prize.startswith("classical-box-"):
                return prize_box_angles(int(self.prize.rsplit("-", 1)[1]))
            raise InvalidAngles(f"unknown prize preset {self.prize!r}")
        tb1, tb2 = self.prize
        return float(tb1), float(tb2)

    def pick_door(self, entangled, rng):
        if isinstance(self.door, str):
            if self.door == "random-projector":
                return PROJECTOR_DOORS[int(rng.integers(1, 4))]
            if self.door == "help-alice":
                return DoorAngles.from_pair(*HELP_ALICE_DOOR)
            if self.door == "hurt-alice":
                pair = HURT_ALICE_DOOR_ENTANGLED if entangled else HURT_ALICE_DOOR
                return DoorAngles.from_pair(*pair)
            raise InvalidAngles(f"unknown door preset {self.door!r}")
        phi1, phi2 = self.door
        return DoorAngles.from_pair(float(phi1), float(phi2))

    def probe(self):
        """Validate both presets without consuming any randomness."""
        self.prize_angles()
        if isinstance(self.door, str):
            if self.door not in ("random-projector", "help-alice", "hurt-alice"):
                raise InvalidAngles(f"unknown door preset {self.door!r}")
        else:
            phi1, phi2 = self.door
            DoorAngles.from_pair(float(phi1), float(phi2))


@dataclass(frozen=True)
class Outcome:
    """One sampled coincidence: Alice's detector i, Bob's detector j."""

    i: int
    j: int
    bet: str
    win: bool


@dataclass
class Score:
    switch_wins: int = 0
    switch_losses: int = 0
    stay_wins: int = 0
    stay_losses: int = 0

    def record(self, outcome):
        key = f"{outcome.bet}_{'wins' if outcome.win else 'losses'}"
        setattr(self, key, getattr(self, key) + 1)

    def as_dict(self):
        return {
            "switch": {"wins": self.switch_wins, "losses": self.switch_losses},
            "stay": {"wins": self.stay_wins, "losses": self.stay_losses},
        }


# Actions accepted by advance().


@dataclass(frozen=True)
class HostPrepare:
    strategy: HostStrategy


@dataclass(frozen=True)
class PlayerChoose:
    box: int = None
    angles: tuple = None


@dataclass(frozen=True)
class OpenDoor:
    pass


@dataclass(frozen=True)
class PlaceBet:
    bet: str


@dataclass(frozen=True)
class Resolve:
    pass


_session_counter = itertools.count(1)


def _new_session_id():
    return f"g{next(_session_counter):04d}-{secrets.token_hex(4)}"


@dataclass
class GameSession:
    """Mutable session record; drive it with advance()."""

    entangled: bool = False
    noise_p: float = 0.0
    seed: int = None
    id: str = field(default_factory=_new_session_id)
    phase: str = "Created"
    host: HostStrategy = None
    player_angles: tuple = None
    door: DoorAngles = None
    bet: str = None
    outcome: Outcome = None
    score: Score = field(default_factory=Score)
    rounds: int = 0
    history: list = field(default_factory=list)

    def __post_init__(self):
        if not 0.0 <= float(self.noise_p) <= 1.0:
            raise InvalidWeights(f"noise_p must lie in [0, 1], got {self.noise_p}")
        self.noise_p = float(self.noise_p)
        if self.seed is None:
            self.seed = int(secrets.randbits(48))
        self._rng = np.random.default_rng(self.seed)
        self._distribution = None
        self._dist_matrix = None

    def distribution_matrix(self):
        """3x3 coincidence table of the current round, or None before OpenDoor."""
        return self._dist_matrix


def _require_phase(session, *allowed):
    if session.phase not in allowed:
        raise IllegalPhaseTransition(
            f"action not allowed in phase {session.phase} (expected {' or '.join(allowed)})"
        )


def outcome_distribution(angles, door, entangled, noise_p):
    """3x3 coincidence probabilities P(i, j) for one configuration.

    Runs the density-matrix pipeline (exact for zero noise as well) and
    normalizes by the surviving weight.  Raises DegenerateDoorOpening when
    the doors absorb everything.
    """
    rho_o = pauli_channel(channel_input(entangled), PauliWeights.equal(noise_p))
    e = detection_map(angles, door)
    diag = np.real(np.diag(e @ rho_o @ e.conj().T))
    total = float(diag.sum())
    if total <= 1e-12:
        raise DegenerateDoorOpening("door opening removed all coincidence weight")
    return (diag / total).reshape(3, 3)


@lru_cache(maxsize=512)
def _cached_distribution(angles, door, entangled, noise_p):
    # repeated rounds with the same configuration resample from one table
    dist = outcome_distribution(angles, door, entangled, noise_p)
    dist.setflags(write=False)
    return dist


@lru_cache(maxsize=512)
def _cached_cumulative(angles, door, entangled, noise_p):
    dist = _cached_distribution(angles, door, entangled, noise_p)
    cum = np.cumsum(dist.ravel())
    cum /= cum[-1]
    cum.setflags(write=False)
    return cum


def advance(session, action):
    """Apply one game action, returning the mutated session.

    Illegal phase/action pairs raise IllegalPhaseTransition and leave the
    session untouched.  A degenerate door opening also leaves the phase at
    PlayerChosen so a different OpenDoor can be tried.
    """
    if isinstance(action, HostPrepare):
        _require_phase(session, "Created", "Resolved")
        # resolve presets now so bad prize or door fails at preparation time
        action.strategy.probe()
        if session.phase == "Resolved":
            # next round: keep score and rng, clear the round record
            session.player_angles = None
            session.door = None
            session.bet = None
            session.outcome = None
            session._distribution = None
            session._dist_matrix = None
        session.host = action.strategy
        session.phase = "HostPrepared"
    elif isinstance(action, PlayerChoose):
        _require_phase(session, "HostPrepared")
        if (action.box is None) == (action.angles is None):
            raise InvalidAngles("choose exactly one of box or angles")
        if action.box is not None:
            session.player_angles = player_box_angles(int(action.box))
        else:
            ta1, ta2 = action.angles
            probe = RotatorAngles(float(ta1), float(ta2), 0.0, 0.0)
            session.player_angles = (probe.theta_a1, probe.theta_a2)
        session.phase = "PlayerChosen"
    elif isinstance(action, OpenDoor):
        _require_phase(session, "PlayerChosen")
        door = session.host.pick_door(session.entangled, session._rng)
        tb1, tb2 = session.host.prize_angles()
        angles = RotatorAngles(*session.player_angles, tb1, tb2)
        # may raise DegenerateDoorOpening; phase then stays PlayerChosen
        session._distribution = _cached_cumulative(
            angles, door, session.entangled, session.noise_p
        )
        session._dist_matrix = _cached_distribution(
            angles, door, session.entangled, session.noise_p
        )
        session.door = door
        session.phase = "DoorOpened"
    elif isinstance(action, PlaceBet):
        _require_phase(session, "DoorOpened")
        if action.bet not in BETS:
            raise ValueError(f"bet must be one of {BETS}, got {action.bet!r}")
        session.bet = action.bet
        session.phase = "BetPlaced"
    elif isinstance(action, Resolve):
        _require_phase(session, "BetPlaced")
        i, j = _sample_cumulative(session._distribution, session._rng)
        win = (i == j) if session.bet == "stay" else (i != j)
        session.outcome = Outcome(i=i, j=j, bet=session.bet, win=win)
        session.score.record(session.outcome)
        session.history.append(session.outcome)
        session.rounds += 1
        session.phase = "Resolved"
    else:
        raise IllegalPhaseTransition(f"unknown action {action!r}")
    return session


def sample_outcome(distribution, rng):
    """Draw one coincidence (i, j), 1-based, from a 3x3 probability table."""
    flat = np.asarray(distribution, dtype=float).ravel()
    cum = np.cumsum(flat)
    return _sample_cumulative(cum / cum[-1], rng)


def _sample_cumulative(cum, rng):
    idx = int(np.searchsorted(cum, rng.random(), side="right"))
    idx = min(idx, 8)
    return idx // 3 + 1, idx % 3 + 1


def play_rounds(n, bet, entangled=False, noise_p=0.0, host=None, player_angles=None,
                seed=None):
    """Run n full rounds with a fixed configuration; returns the session.

    The default configuration is the semiclassical game: uniform prize,
    uniform player choice, a projector door drawn at random each round.
    """
    host = host if host is not None else HostStrategy()
    player_angles = player_angles if player_angles is not None else UNIFORM_CHOICE
    session = GameSession(entangled=entangled, noise_p=noise_p, seed=seed)
    for _ in range(int(n)):
        advance(session, HostPrepare(host))
        advance(session, PlayerChoose(angles=player_angles))
        advance(session, OpenDoor())
        advance(session, PlaceBet(bet))
        advance(session, Resolve())
    return session
