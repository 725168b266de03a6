"""Learners: SAT-based DFA identification and L*"""
