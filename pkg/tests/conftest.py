from hypothesis import HealthCheck, settings

# exact rational arithmetic has fat per-example tails; wall-clock deadlines
# only produce flaky failures here
settings.register_profile(
    "exact", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("exact")
