"""Torricelli drainage times, Torricelli numbers, turn-up numbers and balanced clepsydrae."""
