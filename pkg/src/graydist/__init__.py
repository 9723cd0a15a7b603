"""Monads, distributive laws and lax Gray tensor presentations over finite containers."""
