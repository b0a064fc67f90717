/** Seeded force-directed layout.
 *
 * The RNG seed is a hash of the graph JSON, so the same graph always lands
 * in the same arrangement (comparability across parameter scrubs), and the
 * iteration count is fixed, so positions are a pure function of the graph.
 */
import type { MapperGraphJson } from "./types.js";

export interface Point {
    x: number;
    y: number;
}

export function fnv1a(text: string): number {
    let h = 0x811c9dc5;
    for (let i = 0; i < text.length; i++) {
        h ^= text.charCodeAt(i);
        h = Math.imul(h, 0x01000193);
    }
    return h >>> 0;
}

export function mulberry32(seed: number): () => number {
    let a = seed >>> 0;
    return () => {
        a = (a + 0x6d2b79f5) | 0;
        let t = Math.imul(a ^ (a >>> 15), 1 | a);
        t = (t + Math.imul(t ^ (t >>> 7), 61 | t)) ^ t;
        return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
    };
}

const ITERATIONS = 150;
const SPRING_LENGTH = 0.18;
const SPRING_K = 0.06;
const REPULSION = 0.004;
const CENTERING = 0.012;

/** Positions in the unit square, keyed by node id. */
export function layoutGraph(graph: MapperGraphJson): Map<number, Point> {
    const ids = graph.nodes.map((n) => n.id);
    const out = new Map<number, Point>();
    if (ids.length === 0) return out;

    const rand = mulberry32(fnv1a(JSON.stringify({ n: ids, e: graph.edges })));
    const idx = new Map(ids.map((id, i) => [id, i]));
    // start on a circle with seeded jitter so symmetric graphs do not collapse
    const xs = ids.map((_, i) => 0.5 + 0.3 * Math.cos((2 * Math.PI * i) / ids.length) + 0.05 * (rand() - 0.5));
    const ys = ids.map((_, i) => 0.5 + 0.3 * Math.sin((2 * Math.PI * i) / ids.length) + 0.05 * (rand() - 0.5));

    const fx = new Array<number>(ids.length);
    const fy = new Array<number>(ids.length);
    for (let step = 0; step < ITERATIONS; step++) {
        const cool = 1 - step / ITERATIONS;
        fx.fill(0);
        fy.fill(0);
        for (let i = 0; i < ids.length; i++) {
            for (let j = i + 1; j < ids.length; j++) {
                let dx = xs[i]! - xs[j]!;
                let dy = ys[i]! - ys[j]!;
                let d2 = dx * dx + dy * dy;
                if (d2 < 1e-9) {
                    dx = rand() - 0.5;
                    dy = rand() - 0.5;
                    d2 = dx * dx + dy * dy;
                }
                const f = REPULSION / d2;
                fx[i]! += dx * f;
                fy[i]! += dy * f;
                fx[j]! -= dx * f;
                fy[j]! -= dy * f;
            }
        }
        for (const e of graph.edges) {
            const i = idx.get(e.source)!;
            const j = idx.get(e.target)!;
            const dx = xs[j]! - xs[i]!;
            const dy = ys[j]! - ys[i]!;
            const d = Math.sqrt(dx * dx + dy * dy) || 1e-6;
            const f = SPRING_K * (d - SPRING_LENGTH);
            fx[i]! += (dx / d) * f;
            fy[i]! += (dy / d) * f;
            fx[j]! -= (dx / d) * f;
            fy[j]! -= (dy / d) * f;
        }
        for (let i = 0; i < ids.length; i++) {
            fx[i]! += (0.5 - xs[i]!) * CENTERING;
            fy[i]! += (0.5 - ys[i]!) * CENTERING;
            xs[i] = xs[i]! + fx[i]! * cool;
            ys[i] = ys[i]! + fy[i]! * cool;
        }
    }

    // normalize into [0.05, 0.95]^2
    const xmin = Math.min(...xs);
    const xmax = Math.max(...xs);
    const ymin = Math.min(...ys);
    const ymax = Math.max(...ys);
    const spanX = Math.max(xmax - xmin, 1e-6);
    const spanY = Math.max(ymax - ymin, 1e-6);
    ids.forEach((id, i) => {
        out.set(id, {
            x: 0.05 + (0.9 * (xs[i]! - xmin)) / spanX,
            y: 0.05 + (0.9 * (ys[i]! - ymin)) / spanY,
        });
    });
    return out;
}
