from celery import shared_task
from celery.utils.log import get_task_logger
from django.conf import settings
from rest_framework.exceptions import ValidationError

from bn_learning.exceptions import BnslError

from .experiments import (
    ORDER_COLUMNS,
    SCALING_COLUMNS,
    run_order_experiment,
    run_scaling_experiment,
    write_rows,
)
from .serializers import build_order_spec, build_scaling_spec

logger = get_task_logger(__name__)


@shared_task(
    name="bnsl_bench.tasks.run_order_experiment_task",
    bind=True,
    acks_late=True,
    max_retries=settings.CELERY_MAX_RETRIES,
    default_retry_delay=settings.CELERY_DELAY_BETWEEN_RETRIES,
    retry_backoff=settings.CELERY_RETRY_BACKOFF,
)
def run_order_experiment_task(self, options: dict, output: str) -> str:
    log_prefix = f"Order_{options.get('network')}: "

    try:
        rows = run_order_experiment(build_order_spec(options))
    except (BnslError, ValidationError) as exc:
        message = log_prefix + f"Experiment cannot run: {exc}"
        logger.warning(message)
        return message

    try:
        write_rows(rows, ORDER_COLUMNS, output)
    except OSError as exc:
        logger.warning(
            log_prefix + f"Writing `{output}` raised retryable exception: {exc}!"
        )
        raise self.retry(exc=exc)

    return log_prefix + f"Wrote {len(rows)} rows to {output}."


@shared_task(
    name="bnsl_bench.tasks.run_scaling_experiment_task",
    bind=True,
    acks_late=True,
    max_retries=settings.CELERY_MAX_RETRIES,
    default_retry_delay=settings.CELERY_DELAY_BETWEEN_RETRIES,
    retry_backoff=settings.CELERY_RETRY_BACKOFF,
)
def run_scaling_experiment_task(self, options: dict, output: str) -> str:
    # TODO: Share the retry and reporting code with the order task
    log_prefix = f"Scaling_{options.get('algorithm', 'si-hiton-pc')}: "

    try:
        rows = run_scaling_experiment(build_scaling_spec(options))
    except (BnslError, ValidationError) as exc:
        message = log_prefix + f"Experiment cannot run: {exc}"
        logger.warning(message)
        return message

    try:
        write_rows(rows, SCALING_COLUMNS, output)
    except OSError as exc:
        logger.warning(
            log_prefix + f"Writing `{output}` raised retryable exception: {exc}!"
        )
        raise self.retry(exc=exc)

    return log_prefix + f"Wrote {len(rows)} rows to {output}."
