"""
Interfaz de línea de comandos del motor de probabilidad de segundo orden.
"""
