/** Piano-roll preview of one composition's first minute of note events. */

import type { Store } from "../state.js";
import type { PreviewPayload } from "../types.js";
import { el, panel } from "./dom.js";

const PART_COLORS = ["#4269d0", "#ff725c", "#3ca951", "#efb118", "#a463f2", "#6cc5b0"];

export function pianoRollView(store: Store): HTMLElement {
  const { root, body } = panel("Score Preview");
  root.classList.add("pianoroll-panel");
  const canvas = el("canvas", { class: "pianoroll" }) as HTMLCanvasElement;
  canvas.width = 560;
  canvas.height = 200;
  const caption = el("div", { class: "preview-caption" }, "click a row or circle to preview");
  body.append(caption, canvas);

  let shownId: string | null = null;

  async function render(): Promise<void> {
    const id = store.previewId;
    if (id === shownId) return;
    shownId = id;
    const context = canvas.getContext("2d");
    if (!context) return;
    context.clearRect(0, 0, canvas.width, canvas.height);
    if (id === null) {
      caption.textContent = "click a row or circle to preview";
      return;
    }
    const record = store.records.get(id);
    let preview: PreviewPayload;
    try {
      preview = await store.api.preview(id);
    } catch {
      caption.textContent = "preview unavailable";
      return;
    }
    if (store.previewId !== id) return; // superseded while loading
    caption.textContent = record
      ? `${record.title} — ${record.composer_name}` +
        (preview.truncated ? " (first 60 s)" : "")
      : id;
    drawRoll(context, canvas, preview);
  }

  store.subscribe(() => void render());
  return root;
}

function drawRoll(
  context: CanvasRenderingContext2D,
  canvas: HTMLCanvasElement,
  preview: PreviewPayload,
): void {
  const events = preview.events;
  if (events.length === 0) return;
  const tMax = Math.max(
    ...events.map((e) => e.onset_seconds + e.duration_seconds),
  );
  const pitches = events.map((e) => e.midi_pitch);
  const pLo = Math.min(...pitches) - 1;
  const pHi = Math.max(...pitches) + 1;
  const w = canvas.width;
  const h = canvas.height;
  const x = (t: number) => (t / Math.max(tMax, 1e-9)) * (w - 8) + 4;
  const y = (p: number) => h - ((p - pLo) / Math.max(pHi - pLo, 1)) * (h - 8) - 4;
  const rowHeight = Math.max(2, Math.min(8, (h - 8) / (pHi - pLo)));

  context.fillStyle = "#20242b";
  context.fillRect(0, 0, w, h);
  // octave guides at each C
  context.strokeStyle = "#343a44";
  for (let p = Math.ceil(pLo / 12) * 12; p <= pHi; p += 12) {
    context.beginPath();
    context.moveTo(0, y(p));
    context.lineTo(w, y(p));
    context.stroke();
  }
  for (const event of events) {
    context.fillStyle = PART_COLORS[event.part_index % PART_COLORS.length];
    context.fillRect(
      x(event.onset_seconds),
      y(event.midi_pitch) - rowHeight / 2,
      Math.max(1.5, x(event.onset_seconds + event.duration_seconds) - x(event.onset_seconds) - 1),
      rowHeight,
    );
  }
}
