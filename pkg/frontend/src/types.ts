/** Wire types for the mapper service JSON. */

export interface FilterStats {
    min: number;
    mean: number;
    max: number;
}

export interface MapperNodeJson {
    id: number;
    interval: number;
    cluster: number;
    size: number;
    members: number[];
    filter: FilterStats;
}

export interface MapperEdgeJson {
    source: number;
    target: number;
    weight: number;
}

export interface MapperGraphJson {
    nodes: MapperNodeJson[];
    edges: MapperEdgeJson[];
    params: Record<string, unknown>;
    elapsed_seconds?: number;
    warning?: string;
}

export interface CoordinateRanges {
    axes: number;
    ranges: [number, number][];
}

export interface DatasetSummary {
    id: string;
    n: number;
    d: number | null;
    kind: "points" | "matrix";
    uploaded_at: string;
    filters: {
        eccentricity: { min: number; max: number };
        centrality: { min: number; max: number };
        coordinate?: CoordinateRanges;
    };
}

export interface FilterSpec {
    kind: "eccentricity" | "centrality" | "coordinate" | "distance_to_point" | "density";
    axis?: number;
    point?: number[];
    bandwidth?: number;
}

export interface ClusteringSpec {
    strategy: "eps" | "knn" | "linkage";
    epsilon?: number;
    k?: number;
    threshold?: number;
}

export interface MapperParams {
    filter: FilterSpec;
    gain: number;
    intervals?: number;
    resolution?: number;
    clustering: ClusteringSpec;
}

export interface FieldError {
    loc: (string | number)[];
    msg: string;
}
