"""Showcase satisfiability workloads, one per operator family.

Each formula forces a small but non-obvious model shape, so they double as
end-to-end exercises: search for a model, then re-check it under both the
direct checker and the compiled hybrid formula.
"""

SABOTAGE_SHOWCASE = (
    "<>(A & ~B & <><>A) & <>(B & ~A & <><>B) & "
    "[sb](A -> [][]~A) & [sb](B -> [][]~B)"
)

GLOBAL_SABOTAGE_SHOWCASE = (
    "<>(A & ~B & <><>A) & <>(B & ~A & <><>B) & "
    "[][](C & []~C) & <gsb>[][][]false"
)

SWAP_SHOWCASE = (
    "<>(A & ~B) & <>(B & ~A) & []<>true & [][][]false & "
    "[sw][][sw][][]false & [][sw][][]false & <sw><sw><><><><><>true"
)

#: Swap showcase with its long-path conjunct removed: stays satisfiable.
SWAP_SHOWCASE_RELAXED = (
    "<>(A & ~B) & <>(B & ~A) & []<>true & [][][]false & "
    "[sw][][sw][][]false & [][sw][][]false"
)

#: Swap showcase with a contradictory conjunct added: unsatisfiable.
SWAP_SHOWCASE_CONTRADICTION = SWAP_SHOWCASE + " & <>true & []false"

SHOWCASES = {
    "sabotage": SABOTAGE_SHOWCASE,
    "global-sabotage": GLOBAL_SABOTAGE_SHOWCASE,
    "swap": SWAP_SHOWCASE,
}

#: Family to compile each showcase with when re-checking found models.
SHOWCASE_FAMILY = {
    "sabotage": "sabotage",
    "global-sabotage": "sabotage",
    "swap": "swap",
}
