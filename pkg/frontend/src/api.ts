/** Thin typed client for the mapper service; the UI's only data source. */
import type { DatasetSummary, FieldError, MapperGraphJson, MapperParams } from "./types.js";

export class ApiError extends Error {
    status: number;
    fields: FieldError[];

    constructor(status: number, message: string, fields: FieldError[] = []) {
        super(message);
        this.status = status;
        this.fields = fields;
    }
}

async function raiseFor(response: Response): Promise<never> {
    let detail: unknown = null;
    try {
        detail = (await response.json()).detail;
    } catch {
        // non-JSON error body
    }
    if (Array.isArray(detail)) {
        const fields = detail.filter(
            (d): d is FieldError => typeof d === "object" && d !== null && "loc" in d && "msg" in d,
        );
        const msg = fields.map((f) => `${f.loc.join(".")}: ${f.msg}`).join("; ");
        throw new ApiError(response.status, msg || response.statusText, fields);
    }
    throw new ApiError(response.status, typeof detail === "string" ? detail : response.statusText);
}

export class MapperApi {
    constructor(
        private baseUrl: string,
        private fetchImpl: typeof fetch = fetch,
    ) {}

    async uploadDataset(csv: string, kind: "auto" | "points" | "matrix" = "auto"): Promise<DatasetSummary> {
        const response = await this.fetchImpl(`${this.baseUrl}/datasets?kind=${kind}`, {
            method: "POST",
            body: csv,
            headers: { "content-type": "text/csv" },
        });
        if (!response.ok) await raiseFor(response);
        return (await response.json()) as DatasetSummary;
    }

    async getDataset(id: string): Promise<DatasetSummary> {
        const response = await this.fetchImpl(`${this.baseUrl}/datasets/${id}`);
        if (!response.ok) await raiseFor(response);
        return (await response.json()) as DatasetSummary;
    }

    async getFilters(): Promise<{ kind: string; params: string[] }[]> {
        const response = await this.fetchImpl(`${this.baseUrl}/filters`);
        if (!response.ok) await raiseFor(response);
        return ((await response.json()) as { filters: { kind: string; params: string[] }[] }).filters;
    }

    async runMapper(id: string, params: MapperParams, signal?: AbortSignal): Promise<MapperGraphJson> {
        const response = await this.fetchImpl(`${this.baseUrl}/datasets/${id}/mapper`, {
            method: "POST",
            body: JSON.stringify(params),
            headers: { "content-type": "application/json" },
            signal,
        });
        if (!response.ok) await raiseFor(response);
        return (await response.json()) as MapperGraphJson;
    }
}
