/** Recorded service payloads (captured from the workbench API). */
export const viannaInitial = {
    kind: "config",
    history: [],
    seed: {
        rank: 2,
        form: [[0, 1], [-1, 0]],
        vectors: [[1, -1], [1, 2], [-2, -1]],
        signing: [1, 1, 1],
    },
    xvars: ["1*z[(1,-1)]", "1*z[(1,2)]", "1*z[(-2,-1)]"],
    reduced_quiver: { arrows: [[0, 3, 0], [0, 0, 3], [3, 0, 0]], loops: [0, 0, 0] },
    classes: [[1, -1], [1, 2], [-2, -1]],
    ledger: { P: [[0, 3, 0], [0, 0, 3], [3, 0, 0]], s: [0, 0, 0] },
    quiver: { arrows: [[0, 3, 0], [0, 0, 3], [3, 0, 0]], loops: [0, 0, 0] },
    mutable: [true, true, true],
};
export const viannaAfterThree = {
    kind: "config",
    history: [3],
    seed: {
        rank: 2,
        form: [[0, 1], [-1, 0]],
        vectors: [[1, -1], [-5, -1], [2, 1]],
        signing: [1, 1, 1],
    },
    xvars: [
        "1*z[(1,-1)] - 3*z[(-1,-2)] + 3*z[(-3,-3)] - 1*z[(-5,-4)]",
        "(-1*z[(1,2)]) / (-1*z[(6,3)] + 3*z[(4,2)] - 3*z[(2,1)] + 1*z[(0,0)])",
        "1*z[(2,1)]",
    ],
    reduced_quiver: { arrows: [[0, 0, 3], [6, 0, 0], [0, 3, 0]], loops: [0, 0, 0] },
    classes: [[1, -1], [-5, -1], [2, 1]],
    ledger: { P: [[0, 0, 3], [6, 0, 0], [0, 3, 0]], s: [0, 0, 0] },
    quiver: { arrows: [[0, 0, 3], [6, 0, 0], [0, 3, 0]], loops: [0, 0, 0] },
    mutable: [true, true, true],
};
export const blockedLedger = {
    kind: "ledger",
    history: [2],
    ledger: { P: [[0, 1], [1, 0]], s: [1, 0] },
    quiver: { arrows: [[0, 1], [1, 0]], loops: [1, 0] },
    reduced_quiver: { arrows: [[0, 0], [0, 0]], loops: [0, 0] },
    mutable: [false, true],
};
