/** SVG rendering of a mapper graph: node radius from member count, node
 * color from mean filter value, edge width from shared-point count. */
import { layoutGraph } from "./layout.js";
import type { MapperGraphJson, MapperNodeJson } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const SIZE = 640;

/** Blue-to-red ramp over the graph's filter-mean range. */
export function colorFor(value: number, lo: number, hi: number): string {
    const t = hi > lo ? (value - lo) / (hi - lo) : 0.5;
    const r = Math.round(40 + 200 * t);
    const b = Math.round(240 - 200 * t);
    return `rgb(${r},80,${b})`;
}

export function nodeRadius(size: number): number {
    return 6 + 3 * Math.sqrt(size);
}

export interface GraphViewCallbacks {
    onSelect?: (node: MapperNodeJson | null) => void;
}

export class GraphView {
    private svg: SVGSVGElement;
    private hint: HTMLElement;
    private details: HTMLElement;
    private graph: MapperGraphJson | null = null;

    constructor(
        private container: HTMLElement,
        private callbacks: GraphViewCallbacks = {},
    ) {
        const doc = container.ownerDocument;
        this.svg = doc.createElementNS(SVG_NS, "svg") as SVGSVGElement;
        this.svg.setAttribute("viewBox", `0 0 ${SIZE} ${SIZE}`);
        this.svg.setAttribute("class", "mapper-graph");
        this.hint = doc.createElement("div");
        this.hint.className = "empty-hint";
        this.hint.hidden = true;
        this.hint.textContent = "no nodes — widen cover";
        this.details = doc.createElement("div");
        this.details.className = "node-details";
        container.append(this.svg, this.hint, this.details);
    }

    get nodeElements(): SVGCircleElement[] {
        return Array.from(this.svg.querySelectorAll("circle"));
    }

    get edgeElements(): SVGLineElement[] {
        return Array.from(this.svg.querySelectorAll("line"));
    }

    get emptyHintVisible(): boolean {
        return !this.hint.hidden;
    }

    render(graph: MapperGraphJson): void {
        this.graph = graph;
        while (this.svg.firstChild) this.svg.removeChild(this.svg.firstChild);
        this.details.textContent = "";
        if (graph.nodes.length === 0) {
            this.hint.hidden = false;
            return;
        }
        this.hint.hidden = true;

        const doc = this.container.ownerDocument;
        const positions = layoutGraph(graph);
        const px = (id: number) => positions.get(id)!.x * SIZE;
        const py = (id: number) => positions.get(id)!.y * SIZE;
        const means = graph.nodes.map((n) => n.filter.mean);
        const lo = Math.min(...means);
        const hi = Math.max(...means);

        for (const e of graph.edges) {
            const line = doc.createElementNS(SVG_NS, "line");
            line.setAttribute("x1", px(e.source).toFixed(2));
            line.setAttribute("y1", py(e.source).toFixed(2));
            line.setAttribute("x2", px(e.target).toFixed(2));
            line.setAttribute("y2", py(e.target).toFixed(2));
            line.setAttribute("stroke", "#8899aa");
            line.setAttribute("stroke-width", String(1 + Math.log2(1 + e.weight)));
            line.setAttribute("data-source", String(e.source));
            line.setAttribute("data-target", String(e.target));
            this.svg.appendChild(line);
        }
        for (const n of graph.nodes) {
            const circle = doc.createElementNS(SVG_NS, "circle");
            circle.setAttribute("cx", px(n.id).toFixed(2));
            circle.setAttribute("cy", py(n.id).toFixed(2));
            circle.setAttribute("r", nodeRadius(n.size).toFixed(2));
            circle.setAttribute("fill", colorFor(n.filter.mean, lo, hi));
            circle.setAttribute("stroke", "#223");
            circle.setAttribute("data-node-id", String(n.id));
            circle.addEventListener("click", () => this.select(n.id));
            this.svg.appendChild(circle);
        }
    }

    select(nodeId: number | null): void {
        const node = this.graph?.nodes.find((n) => n.id === nodeId) ?? null;
        for (const el of this.nodeElements) {
            el.setAttribute("stroke-width", el.getAttribute("data-node-id") === String(nodeId) ? "3" : "1");
        }
        if (node) {
            this.details.textContent =
                `node ${node.id} (interval ${node.interval}, cluster ${node.cluster}): ` +
                `${node.size} points, filter min ${node.filter.min.toFixed(3)} ` +
                `mean ${node.filter.mean.toFixed(3)} max ${node.filter.max.toFixed(3)} | ` +
                `members: ${node.members.join(", ")}`;
        } else {
            this.details.textContent = "";
        }
        this.callbacks.onSelect?.(node);
    }
}
