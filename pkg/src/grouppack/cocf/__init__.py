"""Knapsack for groups whose co-word problem is context-free."""
