# ensures bch_oracle.py is importable regardless of invocation directory
