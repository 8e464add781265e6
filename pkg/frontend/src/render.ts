/** String renderers for the explorer panels (SVG markup and HTML).
 * Keeping these pure makes the view testable without a browser. */

import { EdgeView, Segment, VertexView, ViewState } from "./state.js";

const QUIVER_SIZE = 360;
const TORUS_SIZE = 300;

function esc(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function edgeSvg(edge: EdgeView): string {
  const scale = QUIVER_SIZE;
  const x1 = edge.x1 * scale;
  const y1 = edge.y1 * scale;
  const x2 = edge.x2 * scale;
  const y2 = edge.y2 * scale;
  // pull the endpoint back so the arrowhead clears the vertex disk
  const dx = x2 - x1;
  const dy = y2 - y1;
  const len = Math.hypot(dx, dy) || 1;
  const trim = 22;
  const ex = x2 - (dx / len) * trim;
  const ey = y2 - (dy / len) * trim;
  const sx = x1 + (dx / len) * trim;
  const sy = y1 + (dy / len) * trim;
  const mx = (sx + ex) / 2 + (-dy / len) * 12;
  const my = (sy + ey) / 2 + (dx / len) * 12;
  return (
    `<path class="edge" d="M ${sx.toFixed(1)} ${sy.toFixed(1)} Q ${mx.toFixed(1)} ${my.toFixed(1)} ${ex.toFixed(1)} ${ey.toFixed(1)}" marker-end="url(#arrow)"></path>` +
    `<text class="edge-label" data-edge="${edge.from}-${edge.to}" x="${mx.toFixed(1)}" y="${my.toFixed(1)}">${esc(edge.label)}</text>`
  );
}

function vertexSvg(vertex: VertexView): string {
  const scale = QUIVER_SIZE;
  const cx = vertex.x * scale;
  const cy = vertex.y * scale;
  const stateClass = vertex.mutable ? "vertex" : "vertex blocked";
  const badge = vertex.selfLoops
    ? `<text class="loop-badge" x="${(cx + 16).toFixed(1)}" y="${(cy - 14).toFixed(1)}">${vertex.selfLoops}&#x21ba;</text>`
    : "";
  return (
    `<g class="${stateClass}" data-vertex="${vertex.index}">` +
    `<circle cx="${cx.toFixed(1)}" cy="${cy.toFixed(1)}" r="16"></circle>` +
    `<text x="${cx.toFixed(1)}" y="${(cy + 4).toFixed(1)}">${esc(vertex.label)}</text>` +
    badge +
    `</g>`
  );
}

export function renderQuiverSvg(view: ViewState): string {
  const body =
    view.edges.map(edgeSvg).join("") + view.vertices.map(vertexSvg).join("");
  return (
    `<svg class="quiver" viewBox="0 0 ${QUIVER_SIZE} ${QUIVER_SIZE}">` +
    `<defs><marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="7" markerHeight="7" orient="auto-start-reverse">` +
    `<path d="M 0 0 L 10 5 L 0 10 z"></path></marker></defs>` +
    body +
    `</svg>`
  );
}

function segmentSvg(seg: Segment, cls: string): string {
  const s = TORUS_SIZE;
  // flip y so the square reads with the origin at the bottom left
  return `<line class="${cls} curve-${seg.curve}" x1="${(seg.x1 * s).toFixed(1)}" y1="${((1 - seg.y1) * s).toFixed(1)}" x2="${(seg.x2 * s).toFixed(1)}" y2="${((1 - seg.y2) * s).toFixed(1)}"></line>`;
}

export function renderTorusSvg(view: ViewState): string {
  const s = TORUS_SIZE;
  const lines = view.torusSegments.map((seg) => segmentSvg(seg, "geodesic")).join("");
  const ticks = view.torusTicks.map((seg) => segmentSvg(seg, "hair")).join("");
  return (
    `<svg class="torus" viewBox="-4 -4 ${s + 8} ${s + 8}">` +
    `<rect class="fundamental" x="0" y="0" width="${s}" height="${s}"></rect>` +
    lines +
    ticks +
    `</svg>`
  );
}

export function renderSidebar(view: ViewState): string {
  const xvars = view.xvars
    .map((text, i) => `<li><code>x[${i + 1}] = ${esc(text)}</code></li>`)
    .join("");
  const character = view.character
    ? `<p class="character">character: a = ${esc(view.character.a)}, b = ${esc(view.character.b)}</p>`
    : "";
  return (
    `<div class="sidebar">` +
    `<p class="breadcrumb">trail: ${esc(view.historyLabel)}</p>` +
    `<button class="undo" data-action="undo">undo</button>` +
    character +
    `<ul class="xvars">${xvars}</ul>` +
    `</div>`
  );
}

export function renderApp(view: ViewState): string {
  const torus = view.torusSegments.length
    ? `<section class="panel">${renderTorusSvg(view)}</section>`
    : "";
  return (
    `<main class="explorer" data-session="${esc(view.sessionId)}">` +
    `<section class="panel">${renderQuiverSvg(view)}</section>` +
    torus +
    renderSidebar(view) +
    `</main>`
  );
}
