/** Pure derivation of the view model from a service state payload.
 * Every number displayed is read off the payload; nothing is computed
 * beyond layout geometry. */
export function quiverLabels(quiver) {
    const labels = [];
    const n = quiver.arrows.length;
    for (let i = 0; i < n; i++) {
        for (let j = 0; j < n; j++) {
            const mult = quiver.arrows[i][j];
            if (mult > 0) {
                labels.push(`${i + 1}->${j + 1}:${mult}`);
            }
        }
    }
    return labels;
}
function circularLayout(count) {
    const out = [];
    for (let i = 0; i < count; i++) {
        const angle = -Math.PI / 2 + (2 * Math.PI * i) / Math.max(count, 1);
        out.push({ x: 0.5 + 0.38 * Math.cos(angle), y: 0.5 + 0.38 * Math.sin(angle) });
    }
    return out;
}
/** Segments of the closed geodesic of class (p, q) through the origin of
 * the unit square, split at the square's boundary. */
export function geodesicSegments(p, q, curve) {
    if (p === 0 && q === 0) {
        return [];
    }
    const cuts = new Set([0, 1]);
    for (let i = 1; i < Math.abs(p); i++) {
        cuts.add(i / Math.abs(p));
    }
    for (let j = 1; j < Math.abs(q); j++) {
        cuts.add(j / Math.abs(q));
    }
    const times = Array.from(cuts).sort((a, b) => a - b);
    const segments = [];
    for (let idx = 0; idx + 1 < times.length; idx++) {
        const t0 = times[idx];
        const t1 = times[idx + 1];
        const tm = (t0 + t1) / 2;
        const offsetX = Math.floor(tm * p);
        const offsetY = Math.floor(tm * q);
        segments.push({
            x1: t0 * p - offsetX,
            y1: t0 * q - offsetY,
            x2: t1 * p - offsetX,
            y2: t1 * q - offsetY,
            curve,
        });
    }
    return segments;
}
/** Hair ticks on the co-orientation side: the class direction rotated by
 * +90 degrees, drawn at each segment midpoint. */
export function coorientationTicks(segments, p, q) {
    const len = Math.hypot(p, q) || 1;
    const nx = -q / len;
    const ny = p / len;
    const size = 0.035;
    return segments.map((seg) => {
        const mx = (seg.x1 + seg.x2) / 2;
        const my = (seg.y1 + seg.y2) / 2;
        return { x1: mx, y1: my, x2: mx + size * nx, y2: my + size * ny, curve: seg.curve };
    });
}
export function deriveViewState(sessionId, state) {
    const quiver = state.reduced_quiver ?? state.quiver ?? { arrows: [], loops: [] };
    const count = quiver.arrows.length;
    const mutable = state.mutable ?? new Array(count).fill(true);
    const selfLoops = state.ledger ? state.ledger.s : new Array(count).fill(0);
    const layout = circularLayout(count);
    const vertices = [];
    for (let i = 0; i < count; i++) {
        const cls = state.classes ? ` (${state.classes[i].join(",")})` : "";
        vertices.push({
            index: i + 1,
            x: layout[i].x,
            y: layout[i].y,
            mutable: Boolean(mutable[i]),
            selfLoops: selfLoops[i] ?? 0,
            label: `${i + 1}${cls}`,
        });
    }
    const edges = [];
    for (let i = 0; i < count; i++) {
        for (let j = 0; j < count; j++) {
            const mult = quiver.arrows[i][j];
            if (mult > 0) {
                edges.push({
                    from: i + 1,
                    to: j + 1,
                    label: String(mult),
                    x1: layout[i].x,
                    y1: layout[i].y,
                    x2: layout[j].x,
                    y2: layout[j].y,
                });
            }
        }
    }
    const torusSegments = [];
    const torusTicks = [];
    if (state.classes) {
        state.classes.forEach(([p, q], idx) => {
            const segments = geodesicSegments(p, q, idx + 1);
            torusSegments.push(...segments);
            torusTicks.push(...coorientationTicks(segments, p, q));
        });
    }
    return {
        sessionId,
        kind: state.kind,
        historyLabel: state.history.length ? state.history.join(" , ") : "initial",
        xvars: state.xvars ?? [],
        character: state.character ?? null,
        vertices,
        edges,
        torusSegments,
        torusTicks,
    };
}
