import assert from "node:assert/strict";
import { test } from "node:test";

import { WorkbenchClient } from "../src/api.js";
import { ExplorerController, UiSink } from "../src/controller.js";
import { blockedLedger, viannaAfterThree, viannaInitial } from "./fixtures.js";

interface Recorded {
  method: string;
  path: string;
}

function fakeService(routes: Record<string, { status: number; body: unknown }>) {
  const calls: Recorded[] = [];
  const fetchImpl = async (url: string, init?: RequestInit): Promise<Response> => {
    const method = init?.method ?? "GET";
    calls.push({ method, path: url });
    const key = `${method} ${url}`;
    const route = routes[key];
    if (!route) {
      return new Response(JSON.stringify({ reason: "unknown-route" }), { status: 404 });
    }
    return new Response(JSON.stringify(route.body), { status: route.status });
  };
  return { calls, client: new WorkbenchClient("", fetchImpl) };
}

function sink(): UiSink & { toasts: string[]; html: string[] } {
  const toasts: string[] = [];
  const html: string[] = [];
  return {
    toasts,
    html,
    setContent(content: string) {
      html.push(content);
    },
    toast(message: string) {
      toasts.push(message);
    },
    setBusy() {},
  };
}

test("click mutates and rerenders from the response", async () => {
  const { calls, client } = fakeService({
    "POST /api/sessions": { status: 201, body: { id: "s1", state: viannaInitial } },
    "POST /api/sessions/s1/mutations": {
      status: 200,
      body: { id: "s1", state: viannaAfterThree },
    },
  });
  const ui = sink();
  const controller = new ExplorerController(client, ui);
  await controller.start({ example: "vianna-p2" });
  await controller.clickVertex(3);
  assert.equal(calls.length, 2);
  assert.match(ui.html[1], />6</);
});

test("clicking a blocked vertex sends no request", async () => {
  const { calls, client } = fakeService({
    "POST /api/sessions": { status: 201, body: { id: "s2", state: blockedLedger } },
  });
  const controller = new ExplorerController(client, sink());
  await controller.start({ example: "twocurves-opposite" });
  const before = calls.length;
  await controller.clickVertex(1);
  assert.equal(calls.length, before);
});

test("409 shows a toast and keeps the view", async () => {
  const { client } = fakeService({
    "POST /api/sessions": { status: 201, body: { id: "s3", state: viannaInitial } },
    "POST /api/sessions/s3/mutations": { status: 409, body: { reason: "not-simple" } },
  });
  const ui = sink();
  const controller = new ExplorerController(client, ui);
  await controller.start({ example: "vianna-p2" });
  const rendered = ui.html.length;
  await controller.clickVertex(1);
  assert.equal(ui.html.length, rendered); // view unchanged
  assert.match(ui.toasts[0], /not simple/);
});

test("undo rerenders the previous state", async () => {
  const { client } = fakeService({
    "POST /api/sessions": { status: 201, body: { id: "s4", state: viannaAfterThree } },
    "POST /api/sessions/s4/undo": { status: 200, body: { id: "s4", state: viannaInitial } },
  });
  const ui = sink();
  const controller = new ExplorerController(client, ui);
  await controller.start({ example: "vianna-p2" });
  await controller.clickUndo();
  assert.equal(controller.view?.historyLabel, "initial");
});
