// DOM wiring. Everything interesting happens in controller.ts; this file
// just binds it to the page and keeps the URL in sync.

import { ApiClient, LayerName } from "./api.js";
import { Controller } from "./controller.js";
import { buildDetailModel, projectPose, Rotation } from "./detail.js";
import { buildScene, sceneToSvg, STROKE_WIDTH_PX, EDGE_STROKE, NODE_FILL } from "./render.js";
import { fromUrl, toUrl } from "./state.js";

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
}

function legendHtml(): string {
  const widths = Object.entries(STROKE_WIDTH_PX)
    .map(([tier, px]) => `<div><span class="swatch" style="height:${px}px"></span> ${tier}</div>`)
    .join("");
  const edges = Object.entries(EDGE_STROKE)
    .map(([name, color]) => `<div><span class="dot" style="background:${color}"></span> ${name} pathway</div>`)
    .join("");
  const nodes = Object.entries(NODE_FILL)
    .map(([name, color]) => `<div><span class="dot" style="background:${color}"></span> ${name} affinity</div>`)
    .join("");
  return `<h3>Legend</h3>${widths}${edges}${nodes}`;
}

export async function boot(): Promise<void> {
  const restored = fromUrl(window.location.search);
  const sessionId = restored?.sessionId ?? new URLSearchParams(window.location.search).get("session");
  if (!sessionId) {
    el("app").textContent = "open with ?session=<id>";
    return;
  }
  const api = new ApiClient("");
  const controller = new Controller(api, sessionId, restored ?? undefined);
  const rotation: Rotation = { yawDeg: 30, pitchDeg: 15 };

  const graphBox = el("graph");
  const detailBox = el("detail");
  const banner = el("banner");
  const slider = el<HTMLInputElement>("subgraph-slider");
  const sliderLabel = el("subgraph-label");
  const modeBox = el("mode");
  const filterBox = el("filter");
  const bookmarkCount = el("bookmark-count");
  el("legend").innerHTML = legendHtml();

  function syncUrl(): void {
    window.history.replaceState(null, "", toUrl(controller.state));
  }

  function drawDetail(): void {
    const detail = controller.detail;
    if (!detail) {
      detailBox.innerHTML = "";
      detailBox.hidden = true;
      return;
    }
    const model = buildDetailModel(detail);
    const refs = model.references
      .map((r) => `<li><b>${r.title}</b> (${r.identifier})<br><em>${r.excerpt}</em></li>`)
      .join("");
    const poseSvgs = model.poses
      .map((pose) => {
        const atoms = projectPose(pose, rotation)
          .sort((a, b) => a.depth - b.depth)
          .map((p) => `<circle cx="${(p.x * 8 + 80).toFixed(1)}" cy="${(p.y * 8 + 80).toFixed(1)}" r="3" />`)
          .join("");
        return `<svg viewBox="0 0 160 160" width="160" height="160">${atoms}</svg>` +
          `<div>pose ${pose.pose_id} — confidence ${pose.confidence.toFixed(2)}</div>`;
      })
      .join("");
    detailBox.innerHTML = `
      <button id="detail-close">close</button>
      <h2>${model.targetSymbol}</h2>
      <p>pathway score ${model.score}</p>
      <p>${model.explanation}</p>
      <ul>${refs}</ul>
      ${model.dockingAvailable
        ? `<p>affinity ${model.affinity}</p><div id="poses">${poseSvgs}</div>
           <label>rotate <input id="rotate" type="range" min="0" max="359" value="${rotation.yawDeg}"></label>`
        : `<p class="notice">${model.dockingNotice}</p>`}
      <button id="bookmark-toggle">${model.bookmarked ? "remove bookmark" : "bookmark"}</button>
    `;
    detailBox.hidden = false;
    el("detail-close").onclick = () => {
      controller.close();
      redraw();
    };
    el("bookmark-toggle").onclick = async () => {
      await controller.toggleBookmark();
      redraw();
    };
    const rotate = document.getElementById("rotate") as HTMLInputElement | null;
    if (rotate) {
      rotate.oninput = () => {
        rotation.yawDeg = Number(rotate.value);
        drawDetail();
      };
    }
  }

  function drawFilter(): void {
    if (controller.state.mode !== "bookmark" || !controller.view) {
      filterBox.innerHTML = "";
      return;
    }
    const total = controller.view.subgraph_count;
    const boxes = [];
    for (let i = 1; i <= total; i++) {
      const checked = controller.state.bookmarkFilter.size === 0 || controller.state.bookmarkFilter.has(i);
      boxes.push(
        `<label><input type="checkbox" data-subgraph="${i}" ${checked ? "checked" : ""}> view ${i}</label>`,
      );
    }
    filterBox.innerHTML = boxes.join("");
    filterBox.querySelectorAll("input").forEach((box) => {
      box.onchange = async () => {
        const picked = new Set<number>();
        filterBox.querySelectorAll("input").forEach((other) => {
          if ((other as HTMLInputElement).checked) {
            picked.add(Number((other as HTMLInputElement).dataset.subgraph));
          }
        });
        // all boxes ticked means "no filter"
        await controller.setFilter(picked.size === total ? new Set() : picked);
        redraw();
      };
    });
  }

  function redraw(): void {
    banner.hidden = !controller.retryBanner;
    if (controller.view) {
      graphBox.innerHTML = sceneToSvg(buildScene(controller.view));
      graphBox.querySelectorAll("circle").forEach((circle, i) => {
        const scene = buildScene(controller.view!);
        const nodes = scene.filter((s) => s.kind === "node");
        const shape = nodes[i];
        if (shape && shape.kind === "node" && !shape.isCenter) {
          (circle as SVGCircleElement).style.cursor = "pointer";
          (circle as SVGCircleElement).onclick = async () => {
            await controller.open(shape.id);
            redraw();
          };
        }
      });
      slider.max = String(controller.view.subgraph_count);
      sliderLabel.textContent =
        controller.state.mode === "bookmark"
          ? `bookmarks (${controller.bookmarkCount})`
          : `subgraph ${controller.state.subgraph} / ${controller.view.subgraph_count}`;
    }
    bookmarkCount.textContent = String(controller.bookmarkCount);
    drawDetail();
    drawFilter();
    syncUrl();
  }

  slider.oninput = async () => {
    await controller.moveSlider(Number(slider.value));
    redraw();
  };
  (["c1", "c2", "c3"] as LayerName[]).forEach((layer) => {
    const box = el<HTMLInputElement>(`layer-${layer}`);
    box.checked = controller.state.layers.has(layer);
    if (layer === "c1") box.disabled = true; // base graph is always drawn
    box.onchange = async () => {
      await controller.setLayer(layer);
      box.checked = controller.state.layers.has(layer);
      redraw();
    };
  });
  modeBox.querySelectorAll("button").forEach((button) => {
    (button as HTMLButtonElement).onclick = async () => {
      await controller.switchMode(button.id === "mode-bookmark" ? "bookmark" : "explore");
      redraw();
    };
  });
  el("retry").onclick = async () => {
    await controller.refresh();
    redraw();
  };

  await controller.refresh();
  redraw();
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  void boot();
}
