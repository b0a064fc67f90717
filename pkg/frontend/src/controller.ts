/** Wires state, service client and view together.
 *
 * Parameter scrubs are debounced (250 ms default) and at most one request is
 * in flight: a newer scrub aborts the older request, so the view always
 * settles on the latest parameters.  Undo re-renders the cached graph from
 * history without touching the network.
 */
import { ApiError, MapperApi } from "./api.js";
import { GraphView } from "./render.js";
import { SessionState, clampParams, type HistoryEntry } from "./state.js";
import type { DatasetSummary, MapperGraphJson, MapperParams } from "./types.js";

export interface ControllerOptions {
    debounceMs?: number;
    onHistory?: (length: number) => void;
    onError?: (message: string, field: string | null) => void;
    onWarning?: (message: string | null) => void;
    onRendered?: (entry: HistoryEntry) => void;
}

export const DEFAULT_PARAMS: MapperParams = {
    filter: { kind: "eccentricity" },
    gain: 0.3,
    intervals: 4,
    clustering: { strategy: "eps" },
};

/** Map a service field error location to the control that caused it. */
export function fieldFromLoc(loc: (string | number)[]): string | null {
    const path = loc.filter((p) => p !== "body").join(".");
    return path || null;
}

export class MapperController {
    readonly state: SessionState;
    readonly view: GraphView;
    private timer: ReturnType<typeof setTimeout> | null = null;
    private inflight: AbortController | null = null;
    private requestSerial = 0;

    constructor(
        private api: MapperApi,
        container: HTMLElement,
        private options: ControllerOptions = {},
    ) {
        this.state = new SessionState(DEFAULT_PARAMS);
        this.view = new GraphView(container, {
            onSelect: (node) => this.state.select(node ? node.id : null),
        });
    }

    get debounceMs(): number {
        return this.options.debounceMs ?? 250;
    }

    async uploadCsv(csv: string): Promise<DatasetSummary> {
        const summary = await this.api.uploadDataset(csv);
        this.state.setDataset(summary);
        return summary;
    }

    /** Apply a parameter patch and (debounced) recompute via the service. */
    scrub(patch: Partial<MapperParams>): void {
        const merged: MapperParams = {
            ...this.state.params,
            ...patch,
            filter: { ...this.state.params.filter, ...(patch.filter ?? {}) },
            clustering: { ...this.state.params.clustering, ...(patch.clustering ?? {}) },
        };
        this.state.params = clampParams(merged, this.state.summary);
        if (this.timer) clearTimeout(this.timer);
        this.timer = setTimeout(() => {
            this.timer = null;
            void this.computeNow();
        }, this.debounceMs);
    }

    /** Fire the request immediately (used after upload and in tests). */
    async computeNow(): Promise<HistoryEntry | null> {
        if (!this.state.datasetId) return null;
        if (this.timer) {
            clearTimeout(this.timer);
            this.timer = null;
        }
        this.inflight?.abort();
        const controller = new AbortController();
        this.inflight = controller;
        const serial = ++this.requestSerial;
        const params = this.state.params;
        try {
            const graph = await this.api.runMapper(this.state.datasetId, params, controller.signal);
            if (serial !== this.requestSerial) return null; // a newer request superseded us
            const entry = this.state.push(params, graph);
            this.renderEntry(entry);
            this.options.onError?.("", null);
            return entry;
        } catch (err) {
            if (controller.signal.aborted) return null; // latest-wins cancellation
            if (err instanceof ApiError) {
                const field = err.fields.length ? fieldFromLoc(err.fields[0]!.loc) : null;
                this.options.onError?.(err.message, field);
                return null;
            }
            throw err;
        } finally {
            if (this.inflight === controller) this.inflight = null;
        }
    }

    private renderEntry(entry: HistoryEntry): void {
        this.view.render(entry.graph);
        this.options.onWarning?.(entry.graph.warning ?? null);
        this.options.onHistory?.(this.state.historyLength);
        this.options.onRendered?.(entry);
    }

    /** Restore the previous history entry from cache — no network call. */
    undo(): HistoryEntry | null {
        const entry = this.state.undo();
        if (entry) this.renderEntry(entry);
        return entry;
    }

    redo(): HistoryEntry | null {
        const entry = this.state.redo();
        if (entry) this.renderEntry(entry);
        return entry;
    }

    /** Render a history entry into an arbitrary container for side-by-side
     * comparison of two parameter settings. */
    compareInto(index: number, container: HTMLElement): MapperGraphJson | null {
        const entry = this.state.entry(index);
        if (!entry) return null;
        const view = new GraphView(container);
        view.render(entry.graph);
        return entry.graph;
    }
}
