"""
Noyau algébrique : scalaires, polynômes non commutatifs, bases PBW,
combinatoire, algèbre de Hecke, matrices R, twist, mineurs et centre.
"""
