"""Static string analysis with minimal-DFA abstract values."""
