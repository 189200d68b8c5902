import io
import json
from pathlib import Path
from typing import FrozenSet, Optional

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError
from rest_framework.exceptions import ValidationError

from bn_learning.exceptions import BnslError

from ..experiments import write_rows
from ..serializers import load_spec_file

USAGE_ERROR = 1
DATA_ERROR = 2


def name_list(value: Optional[str]) -> FrozenSet[str]:
    """Comma separated node names, e.g. `A,B`."""
    if not value:
        return frozenset()
    return frozenset(name.strip() for name in value.split(",") if name.strip())


def split_list(value: str, cast=float) -> list:
    """Comma separated values in the given order, e.g. `0.1,0.5,1`."""
    return [cast(item.strip()) for item in value.split(",") if item.strip()]


class BnslCommand(BaseCommand):
    """Management command whose data and model errors end with exit code 2."""

    requires_system_checks = []

    def handle(self, *args, **options):
        try:
            return self.run(**options)
        except ValidationError as exc:
            raise CommandError(
                f"Invalid input: {exc.detail}", returncode=DATA_ERROR
            ) from exc
        except BnslError as exc:
            raise CommandError(str(exc), returncode=DATA_ERROR) from exc

    def run(self, **options):
        raise NotImplementedError

    @staticmethod
    def usage_error(message: str):
        raise CommandError(message, returncode=USAGE_ERROR)

    @staticmethod
    def seed(options) -> int:
        return settings.BNSL_SEED if options.get("seed") is None else options["seed"]

    @staticmethod
    def alpha(options) -> float:
        if options.get("alpha") is None:
            return settings.BNSL_ALPHA
        return options["alpha"]

    @staticmethod
    def max_condition_size(options) -> Optional[int]:
        if options.get("max_condition_size") is None:
            return settings.BNSL_MAX_CONDITION_SIZE
        return options["max_condition_size"]

    def emit_json(self, payload, output: Optional[str] = None) -> None:
        text = json.dumps(payload, indent=2, sort_keys=False)
        if output:
            Path(output).write_text(text + "\n", encoding="utf-8")
        else:
            self.stdout.write(text)


class ExperimentCommand(BnslCommand):
    """Shared surface of the experiment commands: YAML spec, flag overrides, queue."""

    columns = ()
    overrides = ()

    def add_arguments(self, parser):
        parser.add_argument("--spec", help="YAML file with the experiment options.")
        parser.add_argument("--output", help="CSV path; rows go to stdout if omitted.")
        parser.add_argument(
            "--queue",
            action="store_true",
            help="Send the experiment to the Celery workers instead of running it.",
        )

    def experiment_options(self, options) -> dict:
        experiment = load_spec_file(options["spec"]) if options["spec"] else {}
        experiment.update(
            {
                key: options[key]
                for key in self.overrides
                if options.get(key) is not None
            }
        )
        return experiment

    def run(self, **options):
        experiment = self.experiment_options(options)
        if options["queue"]:
            if not options["output"]:
                self.usage_error("--queue needs --output.")
            result = self.task().delay(experiment, options["output"])
            self.stdout.write(f"Queued experiment as task {result.id}.")
            return

        rows = self.experiment(experiment)
        if options["output"]:
            write_rows(rows, self.columns, options["output"])
            self.stdout.write(f"Wrote {len(rows)} rows to {options['output']}.")
        else:
            buffer = io.StringIO()
            write_rows(rows, self.columns, buffer)
            self.stdout.write(buffer.getvalue(), ending="")

    def experiment(self, experiment: dict) -> list:
        raise NotImplementedError

    def task(self):
        raise NotImplementedError
