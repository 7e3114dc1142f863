import os

from hypothesis import HealthCheck, settings

settings.register_profile(
    "qkron",
    max_examples=int(os.environ.get("QKRON_EXAMPLES", "200")),
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("qkron")
