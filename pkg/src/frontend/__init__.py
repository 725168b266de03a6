"""CHC-over-strings input handling"""
