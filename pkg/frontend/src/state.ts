/** Session state: current parameters, append-only history, undo, selection.
 * The state never computes topology; it only stores what the service sent. */
import type { DatasetSummary, MapperGraphJson, MapperParams } from "./types.js";

export interface HistoryEntry {
    params: MapperParams;
    graph: MapperGraphJson;
}

export function cloneParams(params: MapperParams): MapperParams {
    return JSON.parse(JSON.stringify(params)) as MapperParams;
}

/** Filter-value range advertised by the dataset summary, used to keep the
 * cover inside the data and to scale sliders. */
export function filterRange(summary: DatasetSummary, params: MapperParams): [number, number] {
    const f = params.filter;
    if (f.kind === "coordinate" && summary.filters.coordinate && f.axis !== undefined) {
        const r = summary.filters.coordinate.ranges[f.axis];
        if (r) return r;
    }
    if (f.kind === "eccentricity") {
        return [summary.filters.eccentricity.min, summary.filters.eccentricity.max];
    }
    if (f.kind === "centrality") {
        return [summary.filters.centrality.min, summary.filters.centrality.max];
    }
    return [0, 1];
}

/** Clamp parameters into the ranges the service advertises: gain stays in
 * (0, 1), the interval count at >= 1, resolution/epsilon strictly positive
 * and no larger than the filter span / data scale. */
export function clampParams(params: MapperParams, summary: DatasetSummary | null): MapperParams {
    const out = cloneParams(params);
    out.gain = Math.min(0.99, Math.max(0.01, out.gain));
    if (out.intervals !== undefined) {
        out.intervals = Math.max(1, Math.round(out.intervals));
    }
    if (out.resolution !== undefined && out.resolution <= 0) {
        delete out.resolution;
    }
    if (summary && out.resolution !== undefined) {
        const [lo, hi] = filterRange(summary, out);
        out.resolution = Math.min(out.resolution, Math.max(hi - lo, 1e-9));
    }
    if (out.clustering.strategy === "eps" && out.clustering.epsilon !== undefined) {
        out.clustering.epsilon = Math.max(1e-9, out.clustering.epsilon);
    }
    if (out.filter.kind === "coordinate" && summary?.filters.coordinate) {
        const axes = summary.filters.coordinate.axes;
        out.filter.axis = Math.min(axes - 1, Math.max(0, out.filter.axis ?? 0));
    }
    return out;
}

export class SessionState {
    datasetId: string | null = null;
    summary: DatasetSummary | null = null;
    params: MapperParams;
    selection: number | null = null;
    private history: HistoryEntry[] = [];
    /** Index into history of the entry currently shown (undo moves it back). */
    private cursor = -1;

    constructor(initial: MapperParams) {
        this.params = cloneParams(initial);
    }

    setDataset(summary: DatasetSummary): void {
        this.datasetId = summary.id;
        this.summary = summary;
        this.history = [];
        this.cursor = -1;
        this.selection = null;
    }

    get historyLength(): number {
        return this.history.length;
    }

    get current(): HistoryEntry | null {
        return this.cursor >= 0 ? this.history[this.cursor]! : null;
    }

    entry(index: number): HistoryEntry | null {
        return index >= 0 && index < this.history.length ? this.history[index]! : null;
    }

    /** Record a service result; history is append-only. */
    push(params: MapperParams, graph: MapperGraphJson): HistoryEntry {
        const entry = { params: cloneParams(params), graph };
        this.history.push(entry);
        this.cursor = this.history.length - 1;
        this.params = cloneParams(params);
        return entry;
    }

    get canUndo(): boolean {
        return this.cursor > 0;
    }

    /** Step the cursor back one entry and restore its parameters.  The
     * history itself is never truncated, so redo/compare stay possible. */
    undo(): HistoryEntry | null {
        if (!this.canUndo) return null;
        this.cursor -= 1;
        const entry = this.history[this.cursor]!;
        this.params = cloneParams(entry.params);
        return entry;
    }

    redo(): HistoryEntry | null {
        if (this.cursor + 1 >= this.history.length) return null;
        this.cursor += 1;
        const entry = this.history[this.cursor]!;
        this.params = cloneParams(entry.params);
        return entry;
    }

    select(nodeId: number | null): void {
        this.selection = nodeId;
    }
}
