/**
 * SVG drawing editor: click empty space to add a vertex, press on one
 * vertex and release on another to connect them. Simple-graph rules are
 * enforced at interaction time -- self-loops and duplicate edges are
 * blocked before they ever reach the model.
 */

export interface DrawingState {
  vertices: [number, number][];
  edges: [number, number][];
}

const VERTEX_RADIUS = 9;
const SVG_NS = "http://www.w3.org/2000/svg";

export class GraphEditor {
  readonly state: DrawingState = { vertices: [], edges: [] };
  readonly svg: SVGSVGElement;
  private dragFrom: number | null = null;
  onchange: (() => void) | null = null;

  constructor(width = 480, height = 360) {
    this.svg = document.createElementNS(SVG_NS, "svg");
    this.svg.setAttribute("width", String(width));
    this.svg.setAttribute("height", String(height));
    this.svg.setAttribute("class", "editor-canvas");
    this.svg.setAttribute("data-testid", "editor-canvas");
    this.svg.addEventListener("mousedown", (ev) => this.handleDown(ev));
    this.svg.addEventListener("mouseup", (ev) => this.handleUp(ev));
    this.render();
  }

  private toLocal(ev: MouseEvent): [number, number] {
    const box = this.svg.getBoundingClientRect();
    return [ev.clientX - box.left, ev.clientY - box.top];
  }

  private hitVertex(p: [number, number]): number | null {
    for (let i = 0; i < this.state.vertices.length; i++) {
      const [x, y] = this.state.vertices[i];
      if ((x - p[0]) ** 2 + (y - p[1]) ** 2 <= (VERTEX_RADIUS * 1.8) ** 2) {
        return i;
      }
    }
    return null;
  }

  private handleDown(ev: MouseEvent): void {
    this.dragFrom = this.hitVertex(this.toLocal(ev));
  }

  private handleUp(ev: MouseEvent): void {
    const p = this.toLocal(ev);
    const hit = this.hitVertex(p);
    if (this.dragFrom === null) {
      if (hit === null) this.addVertex(p);
    } else if (hit !== null) {
      // releasing on the same vertex would be a self-loop: blocked
      if (hit !== this.dragFrom) this.addEdge(this.dragFrom, hit);
    }
    this.dragFrom = null;
  }

  addVertex(p: [number, number]): number {
    this.state.vertices.push([p[0], p[1]]);
    this.render();
    this.changed();
    return this.state.vertices.length - 1;
  }

  addEdge(u: number, v: number): boolean {
    if (u === v) return false; // no self-loops
    const [a, b] = u < v ? [u, v] : [v, u];
    if (this.state.edges.some(([x, y]) => x === a && y === b)) return false;
    this.state.edges.push([a, b]);
    this.render();
    this.changed();
    return true;
  }

  clear(): void {
    this.state.vertices = [];
    this.state.edges = [];
    this.render();
    this.changed();
  }

  private changed(): void {
    if (this.onchange) this.onchange();
  }

  private render(): void {
    while (this.svg.firstChild) this.svg.removeChild(this.svg.firstChild);
    for (const [u, v] of this.state.edges) {
      const line = document.createElementNS(SVG_NS, "line");
      line.setAttribute("x1", String(this.state.vertices[u][0]));
      line.setAttribute("y1", String(this.state.vertices[u][1]));
      line.setAttribute("x2", String(this.state.vertices[v][0]));
      line.setAttribute("y2", String(this.state.vertices[v][1]));
      line.setAttribute("class", "editor-edge");
      this.svg.appendChild(line);
    }
    this.state.vertices.forEach(([x, y], i) => {
      const circle = document.createElementNS(SVG_NS, "circle");
      circle.setAttribute("cx", String(x));
      circle.setAttribute("cy", String(y));
      circle.setAttribute("r", String(VERTEX_RADIUS));
      circle.setAttribute("class", "editor-vertex");
      circle.setAttribute("data-vertex", String(i));
      this.svg.appendChild(circle);
    });
  }
}

/** Render a stored embedding (unit-circle or drawn coordinates) as SVG. */
export function renderEmbedding(
  embedding: [number, number][],
  edges: [number, number][],
  size = 360,
): SVGSVGElement {
  const svg = document.createElementNS(SVG_NS, "svg") as SVGSVGElement;
  svg.setAttribute("width", String(size));
  svg.setAttribute("height", String(size));
  svg.setAttribute("data-testid", "embedding");
  if (embedding.length === 0) return svg;
  const xs = embedding.map((p) => p[0]);
  const ys = embedding.map((p) => p[1]);
  const minX = Math.min(...xs), maxX = Math.max(...xs);
  const minY = Math.min(...ys), maxY = Math.max(...ys);
  const span = Math.max(maxX - minX, maxY - minY) || 1;
  const pad = 20;
  const scale = (size - 2 * pad) / span;
  const px = (p: [number, number]): [number, number] => [
    pad + (p[0] - minX) * scale,
    pad + (p[1] - minY) * scale,
  ];
  for (const [u, v] of edges) {
    const [x1, y1] = px(embedding[u]);
    const [x2, y2] = px(embedding[v]);
    const line = document.createElementNS(SVG_NS, "line");
    line.setAttribute("x1", String(x1));
    line.setAttribute("y1", String(y1));
    line.setAttribute("x2", String(x2));
    line.setAttribute("y2", String(y2));
    line.setAttribute("class", "embedding-edge");
    svg.appendChild(line);
  }
  for (const p of embedding) {
    const [cx, cy] = px(p);
    const circle = document.createElementNS(SVG_NS, "circle");
    circle.setAttribute("cx", String(cx));
    circle.setAttribute("cy", String(cy));
    circle.setAttribute("r", "5");
    circle.setAttribute("class", "embedding-vertex");
    svg.appendChild(circle);
  }
  return svg;
}
