"""
Schemas package for the documents the CLI emits
"""
