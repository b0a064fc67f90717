import { describe, expect, it } from "vitest";

import { GraphView, colorFor, nodeRadius } from "../src/render.js";
import { cycleGraph, emptyGraph } from "./fixtures.js";

function makeView() {
    const container = document.createElement("div");
    document.body.appendChild(container);
    return { view: new GraphView(container), container };
}

describe("graph view", () => {
    it("renders one circle per node and one line per edge", () => {
        const { view } = makeView();
        view.render(cycleGraph(6));
        expect(view.nodeElements).toHaveLength(6);
        expect(view.edgeElements).toHaveLength(6);
        expect(view.emptyHintVisible).toBe(false);
    });

    it("node radius grows with member count", () => {
        const { view } = makeView();
        const g = cycleGraph(3);
        g.nodes[2]!.size = 200;
        view.render(g);
        const radii = view.nodeElements.map((c) => Number(c.getAttribute("r")));
        expect(Math.max(...radii)).toBeCloseTo(nodeRadius(200), 2);
        expect(nodeRadius(200)).toBeGreaterThan(nodeRadius(10));
    });

    it("edge width grows with shared-point count", () => {
        const { view } = makeView();
        const g = cycleGraph(4);
        g.edges[0]!.weight = 1;
        g.edges[1]!.weight = 30;
        view.render(g);
        const widths = view.edgeElements.map((l) => Number(l.getAttribute("stroke-width")));
        expect(widths[1]).toBeGreaterThan(widths[0]!);
    });

    it("colors encode the mean filter value", () => {
        expect(colorFor(0, 0, 1)).not.toBe(colorFor(1, 0, 1));
        expect(colorFor(0.5, 0.5, 0.5)).toMatch(/^rgb\(/); // degenerate range falls back to midpoint
        const { view } = makeView();
        view.render(cycleGraph(4));
        const fills = new Set(view.nodeElements.map((c) => c.getAttribute("fill")));
        expect(fills.size).toBeGreaterThan(1);
    });

    it("clicking a node shows member ids and filter stats", () => {
        const { view, container } = makeView();
        view.render(cycleGraph(4));
        const circle = view.nodeElements[2]!;
        circle.dispatchEvent(new MouseEvent("click"));
        const details = container.querySelector(".node-details")!;
        expect(details.textContent).toContain("node 2");
        expect(details.textContent).toContain("members: 6, 7, 8");
        expect(details.textContent).toContain("mean");
        expect(circle.getAttribute("stroke-width")).toBe("3");
    });

    it("empty graph shows the widen-cover hint", () => {
        const { view } = makeView();
        view.render(emptyGraph());
        expect(view.emptyHintVisible).toBe(true);
        expect(view.nodeElements).toHaveLength(0);
        view.render(cycleGraph(3));
        expect(view.emptyHintVisible).toBe(false);
    });

    it("same graph renders to the same layout (stable arrangement)", () => {
        const { view } = makeView();
        view.render(cycleGraph(6));
        const first = view.nodeElements.map((c) => [c.getAttribute("cx"), c.getAttribute("cy")]);
        view.render(cycleGraph(6));
        const second = view.nodeElements.map((c) => [c.getAttribute("cx"), c.getAttribute("cy")]);
        expect(second).toEqual(first);
    });
});
