"""Finite automata and regular expressions over a finite symbol alphabet"""
