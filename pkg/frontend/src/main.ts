/** Page bootstrap: controls on the left, graph on the right. */
import { MapperApi } from "./api.js";
import { MapperController } from "./controller.js";
import { filterRange } from "./state.js";

function el<T extends HTMLElement>(id: string): T {
    const node = document.getElementById(id);
    if (!node) throw new Error(`missing element #${id}`);
    return node as T;
}

export function bootstrap(baseUrl: string = ""): MapperController {
    const api = new MapperApi(baseUrl || window.location.origin.replace(/\/$/, ""));
    const errorBox = el<HTMLElement>("error");
    const warningBox = el<HTMLElement>("warning");
    const historyBox = el<HTMLElement>("history");
    const controller = new MapperController(api, el("graph"), {
        onHistory: (length) => {
            historyBox.textContent = `history: ${length}`;
        },
        onError: (message, field) => {
            errorBox.textContent = message;
            for (const input of document.querySelectorAll("input,select")) {
                input.classList.remove("invalid");
            }
            if (field) {
                const control = document.querySelector(`[data-field="${field}"]`);
                control?.classList.add("invalid");
            }
        },
        onWarning: (message) => {
            warningBox.textContent = message ?? "";
        },
    });

    const gain = el<HTMLInputElement>("gain");
    const intervals = el<HTMLInputElement>("intervals");
    const epsilon = el<HTMLInputElement>("epsilon");
    const filter = el<HTMLSelectElement>("filter");
    const axis = el<HTMLInputElement>("axis");

    const readParams = () => {
        const kind = filter.value as "eccentricity" | "centrality" | "coordinate";
        controller.scrub({
            filter: kind === "coordinate" ? { kind, axis: Number(axis.value) } : { kind },
            gain: Number(gain.value),
            intervals: Number(intervals.value),
            clustering: epsilon.value
                ? { strategy: "eps", epsilon: Number(epsilon.value) }
                : { strategy: "eps" },
        });
        el<HTMLElement>("gain-value").textContent = gain.value;
    };
    for (const input of [gain, intervals, epsilon, filter, axis]) {
        input.addEventListener("input", readParams);
    }

    el<HTMLInputElement>("file").addEventListener("change", async (event) => {
        const file = (event.target as HTMLInputElement).files?.[0];
        if (!file) return;
        try {
            const summary = await controller.uploadCsv(await file.text());
            el<HTMLElement>("dataset-info").textContent =
                `dataset ${summary.id}: n=${summary.n}` + (summary.d ? `, d=${summary.d}` : " (matrix)");
            const [lo, hi] = filterRange(summary, controller.state.params);
            epsilon.placeholder = `auto (filter span ${(hi - lo).toFixed(3)})`;
            await controller.computeNow();
        } catch (err) {
            errorBox.textContent = String(err instanceof Error ? err.message : err);
        }
    });

    el<HTMLButtonElement>("undo").addEventListener("click", () => controller.undo());
    el<HTMLButtonElement>("redo").addEventListener("click", () => controller.redo());
    el<HTMLButtonElement>("compare").addEventListener("click", () => {
        const box = el<HTMLElement>("compare-box");
        box.textContent = "";
        const n = controller.state.historyLength;
        if (n >= 2) {
            controller.compareInto(n - 2, box);
            controller.compareInto(n - 1, box);
        }
    });

    return controller;
}

if (typeof document !== "undefined" && document.getElementById("graph")) {
    bootstrap();
}
