/** Browser entry point: wires the controller to the real DOM. */
import { WorkbenchClient } from "./api.js";
import { ExplorerController } from "./controller.js";
function domSink(root, toastBox) {
    return {
        setContent(html) {
            root.innerHTML = html;
        },
        toast(message) {
            const node = document.createElement("div");
            node.className = "toast";
            node.textContent = message;
            toastBox.appendChild(node);
            setTimeout(() => node.remove(), 4000);
        },
        setBusy(busy) {
            root.classList.toggle("busy", busy);
        },
    };
}
async function boot() {
    const root = document.getElementById("app");
    const toastBox = document.getElementById("toasts");
    const picker = document.getElementById("example");
    const startButton = document.getElementById("start");
    if (!root || !toastBox || !picker || !startButton) {
        return;
    }
    const client = new WorkbenchClient("");
    const controller = new ExplorerController(client, domSink(root, toastBox));
    const listing = await client.listExamples();
    for (const name of listing.examples) {
        const option = document.createElement("option");
        option.value = name;
        option.textContent = name;
        picker.appendChild(option);
    }
    for (const name of listing.seeds) {
        const option = document.createElement("option");
        option.value = `seed:${name}`;
        option.textContent = `seed:${name}`;
        picker.appendChild(option);
    }
    startButton.addEventListener("click", () => {
        const value = picker.value;
        const payload = value.startsWith("seed:")
            ? { seed: value.slice(5) }
            : { example: value };
        void controller.start(payload);
    });
    root.addEventListener("click", (event) => {
        const target = event.target;
        if (!target) {
            return;
        }
        const vertex = target.closest("[data-vertex]");
        if (vertex) {
            void controller.clickVertex(Number(vertex.getAttribute("data-vertex")));
            return;
        }
        if (target.closest('[data-action="undo"]')) {
            void controller.clickUndo();
        }
    });
    void controller.start({ example: "vianna-p2" });
}
void boot();
