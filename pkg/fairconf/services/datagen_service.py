# fairconf/services/datagen_service.py
import logging
from typing import Optional, Sequence, Tuple, Union

import numpy as np

from fairconf.exceptions.datagen_exceptions import InvalidDimsError, InvalidGeneratorSpecError
from fairconf.models.instance import SchedulingInstance, Slot
from fairconf.schemas.generator import GeneratorSpec, SlotGridSpec

logger = logging.getLogger(__name__)

SeedLike = Union[int, np.random.SeedSequence]

MINUTES_PER_DAY = 1440
WORKDAY_START_MIN = 9 * 60
WORKDAY_END_MIN = 17 * 60

# UTC offset (minutes) and share of participants
TIMEZONE_TABLE: Tuple[Tuple[int, float], ...] = (
    (-480, 0.14),
    (-420, 0.04),
    (-300, 0.20),
    (-180, 0.04),
    (0, 0.08),
    (60, 0.20),
    (120, 0.04),
    (330, 0.08),
    (480, 0.10),
    (540, 0.05),
    (600, 0.03)
)

POPULARITY_LOG_MEAN = 3.0
POPULARITY_LOG_SIGMA = 1.0

# participants, talks, slots of the segregated-group instances
SEGREGATED_SIZES = (10, 10, 15)

PRESETS = {
    "fatrec": dict(kind="timezone", m=40, n=11, slot_grid=SlotGridSpec(count=96, duration_min=15),
                   interest_source="normal"),
    "recsys": dict(kind="timezone", m=1112, n=26, slot_grid=SlotGridSpec(count=48, duration_min=30),
                   interest_source="bernoulli"),
    "icml": dict(kind="timezone", m=2722, n=209, slot_grid=SlotGridSpec(count=240, duration_min=30),
                 interest_source="bernoulli"),
    "segregated-availability": dict(kind="segregated", segregate="availability", split=5),
    "segregated-availability-imbalanced": dict(kind="segregated", segregate="availability", split=7),
    "segregated-interest": dict(kind="segregated", segregate="interest", split=5),
    "segregated-interest-imbalanced": dict(kind="segregated", segregate="interest", split=7)
}


def _rng(seed: SeedLike) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


class DatagenService:
    """Seeded synthetic instances. Every generator is a pure function of its arguments."""

    @staticmethod
    def slot_grid(grid: SlotGridSpec) -> Tuple[Slot, ...]:
        return tuple(
            Slot(
                id=f"s{index + 1}",
                start_utc_min=grid.start_utc_min + index * grid.duration_min,
                duration_min=grid.duration_min
            )
            for index in range(grid.count)
        )

    @staticmethod
    def gen_uniform(m: int, n: int, l: int, seed: SeedLike) -> SchedulingInstance:
        """
        Interest and availability drawn i.i.d. from Uniform[0, 1].

        Slots are back-to-back hours starting at 00:00 UTC.

        Raises:
            InvalidDimsError: Non-positive sizes or n > l
        """
        if m < 1 or n < 1 or l < 1:
            raise InvalidDimsError(f"Sizes must be positive, got m={m} n={n} l={l}")
        if n > l:
            raise InvalidDimsError(f"n={n} talks do not fit in l={l} slots")

        rng = _rng(seed)
        interest = rng.random((m, n))
        availability = rng.random((m, l))
        return SchedulingInstance(
            participant_ids=tuple(f"p{i + 1}" for i in range(m)),
            talk_ids=tuple(f"t{i + 1}" for i in range(n)),
            slots=DatagenService.slot_grid(SlotGridSpec(count=l, duration_min=60)),
            interest=interest,
            availability=availability
        )

    @staticmethod
    def gen_timezone_availability(
            offsets: Sequence[int],
            slots: Sequence[Slot]
    ) -> np.ndarray:
        """
        Binary availability: 1 iff a slot starts within 09:00-17:00 local time.

        Args:
            offsets: UTC offset in minutes per participant
            slots: Slot grid covering whole days

        Returns:
            m x l matrix of 0/1
        """
        if slots:
            span = slots[-1].end_utc_min - slots[0].start_utc_min
            if span % MINUTES_PER_DAY != 0:
                raise InvalidGeneratorSpecError(
                    f"Slot grid spans {span} minutes, not a whole number of days"
                )
        starts = np.array([slot.start_utc_min for slot in slots], dtype=np.int64)
        local = (starts[None, :] + np.asarray(offsets, dtype=np.int64)[:, None]) % MINUTES_PER_DAY
        return ((local >= WORKDAY_START_MIN) & (local < WORKDAY_END_MIN)).astype(float)

    @staticmethod
    def _popularity_ratio(popularity: Sequence[float]) -> np.ndarray:
        popularity = np.asarray(popularity, dtype=float)
        if popularity.size == 0 or np.any(popularity < 0) or popularity.max() <= 0:
            raise InvalidGeneratorSpecError("Popularity must be non-negative with a positive maximum")
        return popularity / popularity.max()

    @staticmethod
    def gen_interest_bernoulli(popularity: Sequence[float], m: int, seed: SeedLike) -> np.ndarray:
        """V_p(t) ~ Bernoulli(popularity(t) / max popularity)."""
        ratio = DatagenService._popularity_ratio(popularity)
        draws = _rng(seed).random((m, ratio.size))
        return (draws < ratio[None, :]).astype(float)

    @staticmethod
    def gen_interest_normal(popularity: Sequence[float], m: int, seed: SeedLike) -> np.ndarray:
        """V_p(t) ~ Normal(ratio, ratio / 4), clipped into [0, 1]."""
        ratio = DatagenService._popularity_ratio(popularity)
        samples = _rng(seed).normal(loc=ratio, scale=ratio / 4.0, size=(m, ratio.size))
        return np.clip(samples, 0.0, 1.0)

    @staticmethod
    def sample_offsets(m: int, seed: SeedLike) -> np.ndarray:
        offsets, shares = zip(*TIMEZONE_TABLE)
        shares = np.asarray(shares) / np.sum(shares)
        return _rng(seed).choice(np.asarray(offsets, dtype=np.int64), size=m, p=shares)

    @staticmethod
    def sample_popularity(n: int, seed: SeedLike) -> np.ndarray:
        """Heavy-tailed citation-count proxies."""
        return np.round(_rng(seed).lognormal(POPULARITY_LOG_MEAN, POPULARITY_LOG_SIGMA, size=n))

    @staticmethod
    def gen_timezone_instance(
            m: int,
            n: int,
            grid: SlotGridSpec,
            seed: int,
            offsets: Optional[Sequence[int]] = None,
            popularity: Optional[Sequence[float]] = None,
            interest_source: str = "bernoulli"
    ) -> SchedulingInstance:
        """
        Timezone-driven availability with popularity-driven interest.

        Offsets and popularity are sampled when omitted; each random
        component draws from its own child of the seed.
        """
        if m < 1 or n < 1 or n > grid.count:
            raise InvalidDimsError(f"Invalid sizes m={m} n={n} l={grid.count}")
        offsets_seed, popularity_seed, interest_seed = np.random.SeedSequence(seed).spawn(3)

        if offsets is None:
            offsets = DatagenService.sample_offsets(m, offsets_seed)
        elif len(offsets) != m:
            raise InvalidGeneratorSpecError(f"Expected {m} offsets, got {len(offsets)}")
        if popularity is None:
            popularity = DatagenService.sample_popularity(n, popularity_seed)
            # keep at least one talk popular
            if popularity.max() <= 0:
                popularity[0] = 1.0
        elif len(popularity) != n:
            raise InvalidGeneratorSpecError(f"Expected {n} popularity values, got {len(popularity)}")

        slots = DatagenService.slot_grid(grid)
        if interest_source == "bernoulli":
            interest = DatagenService.gen_interest_bernoulli(popularity, m, interest_seed)
        elif interest_source == "normal":
            interest = DatagenService.gen_interest_normal(popularity, m, interest_seed)
        else:
            raise InvalidGeneratorSpecError(f"Unknown interest source {interest_source!r}")

        return SchedulingInstance(
            participant_ids=tuple(f"p{i + 1}" for i in range(m)),
            talk_ids=tuple(f"t{i + 1}" for i in range(n)),
            slots=slots,
            interest=interest,
            availability=DatagenService.gen_timezone_availability(offsets, slots)
        )

    @staticmethod
    def gen_partition_instance(values: Sequence[int]) -> SchedulingInstance:
        """
        Two-participant instance encoding number partitioning.

        Both participants value talk i at g_i / sum(G); p1 is available only in
        the first n slots and p2 only in the last n. A schedule with zero
        participant unfairness exists iff G splits into two equal-sum halves.
        """
        values = list(values)
        if not values or any(int(g) != g or g <= 0 for g in values):
            raise InvalidGeneratorSpecError("Partition values must be non-empty positive integers")

        n = len(values)
        row = np.asarray(values, dtype=float) / float(sum(values))
        first = np.concatenate((np.ones(n), np.zeros(n)))
        return SchedulingInstance(
            participant_ids=("p1", "p2"),
            talk_ids=tuple(f"t{i + 1}" for i in range(n)),
            slots=DatagenService.slot_grid(SlotGridSpec(count=2 * n, duration_min=60)),
            interest=np.vstack((row, row)),
            availability=np.vstack((first, first[::-1]))
        )

    @staticmethod
    def power_law_profiles(n: int) -> Tuple[np.ndarray, np.ndarray]:
        """Interest halving from talk to talk (1, 1/2, 1/4, ...) and its mirror image."""
        falling = 0.5 ** np.arange(n)
        return falling, falling[::-1].copy()

    @staticmethod
    def cosine_profiles(l: int) -> Tuple[np.ndarray, np.ndarray]:
        """Availability cos(k pi / 2l) for slot k = 0..l-1 and its mirror image."""
        falling = np.cos(np.arange(l) * np.pi / (2 * l))
        return falling, falling[::-1].copy()

    @staticmethod
    def gen_segregated(
            segregate: str,
            split: int,
            m: int = SEGREGATED_SIZES[0],
            n: int = SEGREGATED_SIZES[1],
            l: int = SEGREGATED_SIZES[2]
    ) -> SchedulingInstance:
        """
        Two participant groups that differ in exactly one profile.

        With segregate="availability" everyone shares the falling power-law
        interest, the first `split` participants have the falling cosine
        availability and the rest the rising one. With segregate="interest"
        everyone shares the falling availability and the groups get the
        falling and rising interest. split = m / 2 gives balanced groups.

        Raises:
            InvalidDimsError: Non-positive sizes, n > l or split outside [0, m]
            InvalidGeneratorSpecError: Unknown segregation kind
        """
        if m < 1 or n < 1 or n > l:
            raise InvalidDimsError(f"Invalid sizes m={m} n={n} l={l}")
        if not 0 <= split <= m:
            raise InvalidDimsError(f"split={split} is outside [0, {m}]")

        first_interest, second_interest = DatagenService.power_law_profiles(n)
        first_availability, second_availability = DatagenService.cosine_profiles(l)
        in_first = (np.arange(m) < split)[:, None]
        if segregate == "availability":
            interest = np.tile(first_interest, (m, 1))
            availability = np.where(in_first, first_availability, second_availability)
        elif segregate == "interest":
            interest = np.where(in_first, first_interest, second_interest)
            availability = np.tile(first_availability, (m, 1))
        else:
            raise InvalidGeneratorSpecError(f"Unknown segregation {segregate!r}")

        return SchedulingInstance(
            participant_ids=tuple(f"p{i + 1}" for i in range(m)),
            talk_ids=tuple(f"t{i + 1}" for i in range(n)),
            slots=DatagenService.slot_grid(SlotGridSpec(count=l, duration_min=60)),
            interest=interest,
            availability=availability
        )

    @staticmethod
    def preset_spec(name: str, seed: int) -> GeneratorSpec:
        if name not in PRESETS:
            raise InvalidGeneratorSpecError(f"Unknown preset {name!r}")
        return GeneratorSpec(preset=name, seed=seed, **PRESETS[name])

    @staticmethod
    def generate(spec: GeneratorSpec) -> SchedulingInstance:
        """Build the instance a GeneratorSpec describes."""
        if spec.preset is not None:
            base = DatagenService.preset_spec(spec.preset, spec.seed)
            overrides = spec.model_dump(exclude_unset=True, exclude={"preset", "kind"})
            spec = GeneratorSpec.model_validate({**base.model_dump(), **overrides})

        logger.info(f"Generating {spec.kind} instance (preset={spec.preset}, seed={spec.seed})")

        if spec.kind == "uniform":
            if spec.m is None or spec.n is None or spec.l is None:
                raise InvalidGeneratorSpecError("uniform generation needs m, n and l")
            return DatagenService.gen_uniform(spec.m, spec.n, spec.l, spec.seed)

        if spec.kind == "partition":
            if not spec.values:
                raise InvalidGeneratorSpecError("partition generation needs values")
            return DatagenService.gen_partition_instance(spec.values)

        if spec.kind == "segregated":
            m, n, l = (
                default if given is None else given
                for given, default in zip((spec.m, spec.n, spec.l), SEGREGATED_SIZES)
            )
            split = m // 2 if spec.split is None else spec.split
            return DatagenService.gen_segregated(spec.segregate, split, m, n, l)

        if spec.m is None or spec.n is None:
            raise InvalidGeneratorSpecError("timezone generation needs m and n")
        grid = spec.slot_grid
        if grid is None:
            if not spec.l or MINUTES_PER_DAY % spec.l:
                raise InvalidGeneratorSpecError("timezone generation needs a slot grid or l dividing a day")
            grid = SlotGridSpec(count=spec.l, duration_min=MINUTES_PER_DAY // spec.l)
        return DatagenService.gen_timezone_instance(
            m=spec.m,
            n=spec.n,
            grid=grid,
            seed=spec.seed,
            offsets=spec.offsets,
            popularity=spec.popularity,
            interest_source=spec.interest_source
        )
