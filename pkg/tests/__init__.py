"""Tests Module - __init__.py"""
