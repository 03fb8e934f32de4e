"""Digital twin of a three-echelon make-to-order supply chain.

Simulates the flow line under disruption scenarios, detects disruptions
from daily state features, identifies the disrupted echelon, and predicts
time-to-recovery.
"""

__version__ = "0.1.0"

FORMAT_VERSION = 1
