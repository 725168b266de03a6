"""Teachers and membership oracles over a clause system"""
