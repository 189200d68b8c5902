from pathlib import Path
from typing import Union

import yaml
from django.conf import settings
from rest_framework import serializers

from bnsl_citest.engines import TEST_NAMES
from bnsl_data.csv_io import CONTINUOUS, DISCRETE
from bnsl_parallel.executor import BACKENDS, SCHEDULES
from bnsl_structure.config import ALGORITHMS

from .exceptions import ExperimentError
from .experiments import OrderExperimentSpec, ScalingExperimentSpec


class OrderExperimentSerializer(serializers.Serializer):  # noqa
    network = serializers.CharField()
    algorithms = serializers.ListField(
        child=serializers.ChoiceField(choices=ALGORITHMS),
        allow_empty=False,
        default=lambda: list(ALGORITHMS),
    )
    ratios = serializers.ListField(
        child=serializers.FloatField(),
        allow_empty=False,
        default=lambda: [0.1, 0.2, 0.5, 1.0, 2.0, 5.0],
    )
    repetitions = serializers.IntegerField(min_value=1, default=20)
    alpha = serializers.FloatField(default=lambda: settings.BNSL_ALPHA)
    seed = serializers.IntegerField(min_value=0, default=lambda: settings.BNSL_SEED)
    test = serializers.ChoiceField(choices=TEST_NAMES, default="mi")

    @staticmethod
    def validate_ratios(ratios):
        if any(ratio <= 0 for ratio in ratios):
            raise serializers.ValidationError({"error": "non_positive_ratio"})
        return ratios

    @staticmethod
    def validate_alpha(alpha):
        if not 0.0 < alpha < 1.0:
            raise serializers.ValidationError({"error": "alpha_out_of_range"})
        return alpha


class ScalingExperimentSerializer(serializers.Serializer):  # noqa
    dataset = serializers.CharField(required=False)
    kind = serializers.ChoiceField(choices=(DISCRETE, CONTINUOUS), default=DISCRETE)
    network = serializers.CharField(required=False)
    n = serializers.IntegerField(min_value=1, required=False)
    algorithm = serializers.ChoiceField(choices=ALGORITHMS, default="si-hiton-pc")
    workers = serializers.ListField(
        child=serializers.IntegerField(min_value=1),
        allow_empty=False,
        default=lambda: [1, 2, 3, 4, 6, 8],
    )
    repetitions = serializers.IntegerField(min_value=1, default=10)
    alpha = serializers.FloatField(default=lambda: settings.BNSL_ALPHA)
    seed = serializers.IntegerField(min_value=0, default=lambda: settings.BNSL_SEED)
    test = serializers.ChoiceField(choices=TEST_NAMES, default="mi")
    schedule = serializers.ChoiceField(
        choices=SCHEDULES, default=lambda: settings.BNSL_SCHEDULE
    )
    backend = serializers.ChoiceField(
        choices=BACKENDS, default=lambda: settings.BNSL_EXECUTOR_BACKEND
    )

    @staticmethod
    def validate_workers(workers):
        if len(set(workers)) != len(workers):
            raise serializers.ValidationError({"error": "duplicate_worker_count"})
        if 1 not in workers:
            raise serializers.ValidationError({"error": "missing_baseline"})
        return workers

    @staticmethod
    def validate_alpha(alpha):
        if not 0.0 < alpha < 1.0:
            raise serializers.ValidationError({"error": "alpha_out_of_range"})
        return alpha

    def validate(self, data):
        from_dataset = "dataset" in data
        from_network = "network" in data and "n" in data
        if from_dataset == from_network:
            raise serializers.ValidationError(
                {"error": "dataset_or_network_and_n_required"}
            )
        if data["test"] == "oracle" and "network" not in data:
            raise serializers.ValidationError({"error": "oracle_needs_network"})
        return data


def load_spec_file(path: Union[str, Path]) -> dict:
    """Experiment options from a YAML mapping."""
    try:
        with open(path, encoding="utf-8") as spec_file:
            options = yaml.safe_load(spec_file) or {}
    except (OSError, yaml.YAMLError) as exc:
        raise ExperimentError(f"Cannot read experiment spec `{path}`: {exc}") from exc
    if not isinstance(options, dict):
        raise ExperimentError(f"Experiment spec `{path}` must hold a mapping.")
    return {key.replace("-", "_"): value for key, value in options.items()}


def build_order_spec(options: dict) -> OrderExperimentSpec:
    serializer = OrderExperimentSerializer(data=options)
    serializer.is_valid(raise_exception=True)
    return OrderExperimentSpec(**serializer.validated_data)


def build_scaling_spec(options: dict) -> ScalingExperimentSpec:
    serializer = ScalingExperimentSerializer(data=options)
    serializer.is_valid(raise_exception=True)
    return ScalingExperimentSpec(**serializer.validated_data)
