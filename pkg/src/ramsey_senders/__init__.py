"""Graph Ramsey arrowing, senders and Ramsey-minimal graphs with certificates."""
__version__ = "0.1.0"
