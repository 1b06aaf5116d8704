"""
Infrastructure 레이어
"""
