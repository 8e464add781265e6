/** Headless end-to-end smoke: drives the real workbench service over HTTP
 * (spawned as a subprocess) through the controller, with the rendered
 * markup standing in for the DOM. */
import assert from "node:assert/strict";
import { after, before, test } from "node:test";
import { spawn } from "node:child_process";
import { createServer } from "node:net";
import { fileURLToPath } from "node:url";
import path from "node:path";
import { WorkbenchClient } from "../src/api.js";
import { ExplorerController } from "../src/controller.js";
import { quiverLabels } from "../src/state.js";
const repoRoot = path.resolve(path.dirname(fileURLToPath(import.meta.url)), "..", "..", "..");
function freePort() {
    return new Promise((resolve, reject) => {
        const probe = createServer();
        probe.listen(0, "127.0.0.1", () => {
            const address = probe.address();
            if (address && typeof address === "object") {
                const port = address.port;
                probe.close(() => resolve(port));
            }
            else {
                reject(new Error("no port"));
            }
        });
    });
}
let service = null;
let base = "";
let requestCount = 0;
const countingFetch = (url, init) => {
    requestCount += 1;
    return fetch(url, init);
};
function sink() {
    const html = [];
    const toasts = [];
    return {
        html,
        toasts,
        setContent: (content) => void html.push(content),
        toast: (message) => void toasts.push(message),
        setBusy: () => { },
    };
}
before(async () => {
    const port = await freePort();
    base = `http://127.0.0.1:${port}`;
    service = spawn("python3", ["-m", "mutwb.cli", "serve", "--port", String(port)], {
        cwd: repoRoot,
        env: { ...process.env, PYTHONPATH: path.join(repoRoot, "src") },
        stdio: "ignore",
    });
    for (let attempt = 0; attempt < 100; attempt++) {
        try {
            const response = await fetch(`${base}/api/examples`);
            if (response.ok) {
                return;
            }
        }
        catch {
            await new Promise((resolve) => setTimeout(resolve, 100));
        }
    }
    throw new Error("service did not come up");
});
after(() => {
    service?.kill();
});
test("vianna session: clicking vertex 3 updates the labels to {3,3,6}", async () => {
    const client = new WorkbenchClient(base, countingFetch);
    const ui = sink();
    const controller = new ExplorerController(client, ui);
    await controller.start({ example: "vianna-p2" });
    const initial = await client.getSession(controller.sessionId);
    assert.deepEqual(quiverLabels(initial.state.reduced_quiver).sort(), [
        "1->2:3",
        "2->3:3",
        "3->1:3",
    ]);
    await controller.clickVertex(3);
    const mutated = await client.getSession(controller.sessionId);
    assert.deepEqual(quiverLabels(mutated.state.reduced_quiver).sort(), [
        "1->3:3",
        "2->1:6",
        "3->2:3",
    ]);
    const markup = ui.html[ui.html.length - 1];
    assert.match(markup, /data-edge="2-1"[^>]*>6</);
    assert.match(markup, /data-edge="1-3"[^>]*>3</);
    assert.match(markup, /data-edge="3-2"[^>]*>3</);
});
test("blocked vertices are rendered blocked and clicks send no request", async () => {
    const client = new WorkbenchClient(base, countingFetch);
    const ui = sink();
    const controller = new ExplorerController(client, ui);
    await controller.start({ example: "twocurves-opposite" });
    await controller.clickVertex(2); // creates a self-crossing on curve 1
    const view = controller.view;
    assert.equal(view.vertices[0].mutable, false);
    assert.match(ui.html[ui.html.length - 1], /vertex blocked/);
    const before = requestCount;
    await controller.clickVertex(1); // blocked: dropped client-side
    assert.equal(requestCount, before);
    // the service agrees when asked directly
    const direct = await fetch(`${base}/api/sessions/${controller.sessionId}/mutations`, {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify({ index: 1 }),
    });
    assert.equal(direct.status, 409);
    const body = (await direct.json());
    assert.equal(body.reason, "not-simple");
});
test("undo through the UI restores the initial state", async () => {
    const client = new WorkbenchClient(base, countingFetch);
    const ui = sink();
    const controller = new ExplorerController(client, ui);
    await controller.start({ example: "a2" });
    const initial = JSON.stringify((await client.getSession(controller.sessionId)).state);
    await controller.clickVertex(1);
    const mutated = (await client.getSession(controller.sessionId)).state;
    assert.notEqual(JSON.stringify(mutated), initial);
    await controller.clickUndo();
    const restored = JSON.stringify((await client.getSession(controller.sessionId)).state);
    assert.equal(restored, initial);
});
