"""Shipped model parameter fixtures"""
