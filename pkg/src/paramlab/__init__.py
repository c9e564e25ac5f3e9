"""Algorithm configuration of the (1+1) EA mutation rate on Ridge and LeadingOnes."""

__version__ = "0.1.0"
