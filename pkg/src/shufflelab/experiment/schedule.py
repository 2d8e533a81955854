"""Trial schedule generation.

A session runs 17 practice trials followed by 93 scored test trials (both
configurable).  Test counts per configuration follow the canonical plan:
5 baseline, 4 per randomized-shuffle probability, 5 per grid-family
configuration, 5 colour flatten.  Constraints honoured:

* each practice trial uses a distinct (kind, block, probability) combination;
* within one configuration the images come from distinct fine classes;
* an image index is never shown twice under the same transform kind;
* each trial offers 5 distinct class options containing the truth once;
* test presentation order is a seeded uniform shuffle.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from ..imagecore.image import Dataset
from ..transforms.rng import Prng
from ..transforms.spec import TransformKind, TransformSpec
from .manifest import SCHEMA_VERSION, build_manifest

N_OPTIONS = 5
N_PRACTICE = 17
N_FINE_CLASSES = 100


class ScheduleError(ValueError):
    """Plan and dataset cannot produce a valid schedule."""


@dataclass(frozen=True)
class Trial:
    """One stimulus presentation."""

    trial_id: int
    phase: str  # "practice" | "test"
    image_split: str
    image_index: int
    spec: TransformSpec
    options: tuple[int, ...]
    correct_option: int
    display_seed: int

    def __post_init__(self):
        if len(self.options) != N_OPTIONS or len(set(self.options)) != N_OPTIONS:
            raise ScheduleError(f"trial {self.trial_id}: options must be 5 distinct ids")
        if not 0 <= self.correct_option < N_OPTIONS:
            raise ScheduleError(f"trial {self.trial_id}: correct option out of range")

    def to_dict(self) -> dict:
        return {
            "trial_id": self.trial_id,
            "phase": self.phase,
            "image_split": self.image_split,
            "image_index": self.image_index,
            "spec": self.spec.to_dict(),
            "options": list(self.options),
            "correct_option": self.correct_option,
            "display_seed": self.display_seed,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Trial":
        return cls(
            trial_id=d["trial_id"],
            phase=d["phase"],
            image_split=d["image_split"],
            image_index=d["image_index"],
            spec=TransformSpec.from_dict(d["spec"]),
            options=tuple(d["options"]),
            correct_option=d["correct_option"],
            display_seed=d["display_seed"],
        )


def canonical_test_plan() -> list[tuple[TransformSpec, int]]:
    """(configuration, trial count) pairs for the 93-trial test phase."""
    counts = {
        TransformKind.BASELINE: 5,
        TransformKind.RANDOMIZED_SHUFFLE: 4,
        TransformKind.GRID_SHUFFLE: 5,
        TransformKind.WITHIN_GRID_SHUFFLE: 5,
        TransformKind.LOCAL_GRID_SHUFFLE: 5,
        TransformKind.COLOR_FLATTEN: 5,
    }
    plan = [(TransformSpec(TransformKind.BASELINE), counts[TransformKind.BASELINE])]
    plan.extend((spec, counts[spec.kind]) for spec in build_manifest())
    return plan


def _pick_image(
    dataset: Dataset,
    order: list[int],
    kind: TransformKind,
    used_by_kind: dict,
    classes_in_config: set,
) -> int:
    used = used_by_kind.setdefault(kind, set())
    for idx in order:
        if idx in used:
            continue
        if dataset.records[idx].fine_label in classes_in_config:
            continue
        used.add(idx)
        classes_in_config.add(dataset.records[idx].fine_label)
        return idx
    raise ScheduleError(
        f"dataset too small: no unused image with a fresh class for {kind.value}"
    )


def _sample_options(rng: Prng, truth: int) -> tuple[tuple[int, ...], int]:
    # 4 distinct distractors from the other 99 classes, truth at a random slot.
    distractors = []
    while len(distractors) < N_OPTIONS - 1:
        candidate = rng.below(N_FINE_CLASSES)
        if candidate != truth and candidate not in distractors:
            distractors.append(candidate)
    slot = rng.below(N_OPTIONS)
    options = distractors[:slot] + [truth] + distractors[slot:]
    return tuple(options), slot


def generate_schedule(
    dataset: Dataset,
    seed: int,
    n_practice: int = N_PRACTICE,
    test_plan: list[tuple[TransformSpec, int]] | None = None,
    expected_test_total: int | None = None,
) -> list[Trial]:
    """Build the full practice+test schedule for one session seed."""
    if test_plan is None:
        test_plan = canonical_test_plan()
    if expected_test_total is not None:
        total = sum(count for _, count in test_plan)
        if total != expected_test_total:
            raise ScheduleError(
                f"test plan totals {total} trials, expected {expected_test_total}"
            )
    if not dataset.records:
        raise ScheduleError("dataset has no records")

    rng = Prng(seed)
    configs = [TransformSpec(TransformKind.BASELINE)] + list(build_manifest())
    if n_practice > len(configs):
        raise ScheduleError(
            f"{n_practice} practice trials need distinct configurations, "
            f"only {len(configs)} exist"
        )

    order = list(range(len(dataset.records)))
    rng.shuffle(order)
    used_by_kind: dict = {}

    practice_configs = [configs[i] for i in rng.sample(len(configs), n_practice)]
    pending: list[tuple[str, TransformSpec]] = [("practice", s) for s in practice_configs]
    for spec, count in test_plan:
        if count < 0:
            raise ScheduleError(f"negative trial count for {spec.tag}")
        pending.extend(("test", spec) for _ in range(count))

    draft = []
    config_classes: dict = {}
    for phase, spec in pending:
        classes = config_classes.setdefault((phase, spec.tag), set())
        image_index = _pick_image(dataset, order, spec.kind, used_by_kind, classes)
        truth = dataset.records[image_index].fine_label
        options, slot = _sample_options(rng, truth)
        display_seed = (rng.next_u32() << 32) | rng.next_u32()
        draft.append(
            dict(
                phase=phase,
                image_index=image_index,
                spec=spec.with_seed(display_seed),
                options=options,
                correct_option=slot,
                display_seed=display_seed,
            )
        )

    practice = [d for d in draft if d["phase"] == "practice"]
    test = [d for d in draft if d["phase"] == "test"]
    rng.shuffle(test)

    trials = []
    for trial_id, d in enumerate(practice + test):
        trials.append(
            Trial(
                trial_id=trial_id,
                phase=d["phase"],
                image_split=dataset.split,
                image_index=d["image_index"],
                spec=d["spec"],
                options=d["options"],
                correct_option=d["correct_option"],
                display_seed=d["display_seed"],
            )
        )
    return trials


def schedule_to_json(trials: list[Trial], seed: int | None = None) -> str:
    doc = {
        "schema": SCHEMA_VERSION,
        "seed": seed,
        "trials": [t.to_dict() for t in trials],
    }
    return json.dumps(doc, indent=2)


def schedule_from_json(text: str) -> list[Trial]:
    doc = json.loads(text)
    return [Trial.from_dict(d) for d in doc["trials"]]
