import sys
from pathlib import Path

from hypothesis import HealthCheck, settings

# Make the sibling oracle module importable regardless of invocation dir.
sys.path.insert(0, str(Path(__file__).resolve().parent))

# Closed-loop property tests run whole simulations per example; wall-clock
# deadlines only add flakiness there.
settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")
