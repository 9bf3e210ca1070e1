"""
Prometheus метрики тропической библиотеки.

- tropical_hull_computations_total: Счётчик вычислений оболочки (algorithm=triple/jarvis/chan)
- tropical_orientation_tests_total: Счётчик вычислений τ̄ в алгоритмах оболочки (algorithm)
- tropical_determinant_evaluations_total: Счётчик тропических определителей (method=enumeration/assignment)
- tropical_cli_commands_total: Счётчик команд CLI (command, status)
- tropical_last_hull_size: Gauge числа вершин последней оболочки
"""

try:
    from prometheus_client import Counter, Gauge

    tropical_hull_computations_total = Counter(
        'tropical_hull_computations_total',
        'Total number of 2D tropical hull computations',
        ['algorithm']  # triple, jarvis, chan
    )

    tropical_orientation_tests_total = Counter(
        'tropical_orientation_tests_total',
        'Total number of tau-bar evaluations performed by hull algorithms',
        ['algorithm']
    )

    tropical_determinant_evaluations_total = Counter(
        'tropical_determinant_evaluations_total',
        'Total number of tropical determinant evaluations',
        ['method']  # enumeration, assignment
    )

    tropical_cli_commands_total = Counter(
        'tropical_cli_commands_total',
        'Total number of CLI command invocations',
        ['command', 'status']  # status: exit code
    )

    tropical_last_hull_size = Gauge(
        'tropical_last_hull_size',
        'Number of vertices of the most recently computed hull'
    )

    METRICS_AVAILABLE = True

except ImportError:
    # Prometheus client не установлен - создаём заглушки
    import logging
    logger = logging.getLogger(__name__)
    logger.warning("prometheus_client not available, metrics disabled")

    class DummyMetric:
        def labels(self, **kwargs):
            return self

        def inc(self, amount=1):
            pass

        def set(self, value):
            pass

    tropical_hull_computations_total = DummyMetric()
    tropical_orientation_tests_total = DummyMetric()
    tropical_determinant_evaluations_total = DummyMetric()
    tropical_cli_commands_total = DummyMetric()
    tropical_last_hull_size = DummyMetric()

    METRICS_AVAILABLE = False
