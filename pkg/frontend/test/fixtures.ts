import type { DatasetSummary, MapperGraphJson } from "../src/types.js";

export function cycleGraph(n = 6): MapperGraphJson {
    return {
        nodes: Array.from({ length: n }, (_, i) => ({
            id: i,
            interval: Math.floor(i / 2),
            cluster: i % 2,
            size: 10 + i,
            members: [i * 3, i * 3 + 1, i * 3 + 2],
            filter: { min: i / n - 0.1, mean: i / n, max: i / n + 0.1 },
        })),
        edges: Array.from({ length: n }, (_, i) => ({
            source: i,
            target: (i + 1) % n,
            weight: 1 + (i % 3),
        })),
        params: { gain: 0.3 },
    };
}

export function emptyGraph(): MapperGraphJson {
    return { nodes: [], edges: [], params: {} };
}

export function summary(id = "abc123"): DatasetSummary {
    return {
        id,
        n: 100,
        d: 2,
        kind: "points",
        uploaded_at: "2024-01-01T00:00:00Z",
        filters: {
            eccentricity: { min: 1.0, max: 2.0 },
            centrality: { min: 80, max: 160 },
            coordinate: { axes: 2, ranges: [[-1, 1], [-1, 1]] },
        },
    };
}

/** Points on the unit circle as CSV text (for upload tests). */
export function circleCsv(n = 100, seed = 7): string {
    let s = seed >>> 0;
    const rand = () => {
        s = (s + 0x6d2b79f5) | 0;
        let t = Math.imul(s ^ (s >>> 15), 1 | s);
        t = (t + Math.imul(t ^ (t >>> 7), 61 | t)) ^ t;
        return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
    };
    const lines: string[] = [];
    for (let i = 0; i < n; i++) {
        const angle = (2 * Math.PI * (i + 0.5 * rand())) / n;
        lines.push(`${Math.cos(angle)},${Math.sin(angle)}`);
    }
    return lines.join("\n") + "\n";
}

/** degree count per node id from the edge list */
export function degrees(graph: MapperGraphJson): Map<number, number> {
    const out = new Map<number, number>(graph.nodes.map((n) => [n.id, 0]));
    for (const e of graph.edges) {
        out.set(e.source, (out.get(e.source) ?? 0) + 1);
        out.set(e.target, (out.get(e.target) ?? 0) + 1);
    }
    return out;
}

export function isCycle(graph: MapperGraphJson): boolean {
    if (graph.nodes.length === 0 || graph.nodes.length !== graph.edges.length) return false;
    if (![...degrees(graph).values()].every((d) => d === 2)) return false;
    // connectivity
    const adj = new Map<number, number[]>(graph.nodes.map((n) => [n.id, []]));
    for (const e of graph.edges) {
        adj.get(e.source)!.push(e.target);
        adj.get(e.target)!.push(e.source);
    }
    const seen = new Set<number>([graph.nodes[0]!.id]);
    const queue = [graph.nodes[0]!.id];
    while (queue.length) {
        for (const v of adj.get(queue.pop()!)!) {
            if (!seen.has(v)) {
                seen.add(v);
                queue.push(v);
            }
        }
    }
    return seen.size === graph.nodes.length;
}
