"""SMT-LIB query serialization, external solver sessions and query dumps"""
