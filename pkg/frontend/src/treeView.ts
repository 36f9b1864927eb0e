import type { TreeGeometry, TreeState } from "./types";

const SVG_NS = "http://www.w3.org/2000/svg";
const PAD = 40;
const FOLDED_FILL = "#ffbb78";
const MIN_STROKE_SPAN = 4;

export interface TreeViewCallbacks {
  onToggleFold(node: number): void;
  /** Completed stroke, in server geometry coordinates. */
  onStroke(points: [number, number][]): void;
}

/**
 * The tree construction area: word nodes stacked vertically in token
 * order, edges toward parents on the right, fold on click, and freehand
 * stroke capture for the line-intersect operations. Folded subtrees render
 * as one colored leaf carrying all their words (positions already arrive
 * collapsed from the server).
 */
export class TreeView {
  readonly svg: SVGSVGElement;
  origin: [number, number] = [0, 0];
  private view = { x: 0, y: 0, width: 1, height: 1 };
  private state: TreeState | null = null;
  private geometry: TreeGeometry | null = null;
  private stroke: [number, number][] | null = null;

  constructor(
    container: HTMLElement,
    private readonly callbacks: TreeViewCallbacks,
  ) {
    this.svg = document.createElementNS(SVG_NS, "svg");
    this.svg.setAttribute("class", "tree-canvas");
    container.appendChild(this.svg);
    this.svg.addEventListener("mousedown", (e) => this.onMouseDown(e));
    this.svg.addEventListener("mousemove", (e) => this.onMouseMove(e));
    this.svg.addEventListener("mouseup", () => this.onMouseUp());
    this.svg.addEventListener("mouseleave", () => this.onMouseUp());
  }

  render(state: TreeState, geometry: TreeGeometry): void {
    this.state = state;
    this.geometry = geometry;
    this.redraw();
  }

  private nodeById(id: number) {
    return this.state!.nodes.find((n) => n.id === id);
  }

  private subtreeTokens(id: number): string[] {
    const indices: number[] = [];
    const walk = (nodeId: number) => {
      const node = this.nodeById(nodeId);
      if (!node) return;
      if ("token_index" in node) {
        indices.push(node.token_index);
      } else {
        for (const child of node.children) walk(child);
      }
    };
    walk(id);
    return indices.map((i) => this.state!.tokens[i]);
  }

  private toGeometry(event: MouseEvent): [number, number] {
    const rect = this.svg.getBoundingClientRect();
    const sx = rect.width > 0 ? this.view.width / rect.width : 1;
    const sy = rect.height > 0 ? this.view.height / rect.height : 1;
    return [
      this.view.x + (event.clientX - rect.left) * sx,
      this.view.y + (event.clientY - rect.top) * sy,
    ];
  }

  private onMouseDown(event: MouseEvent): void {
    const target = event.target as Element;
    if (target.closest("[data-tree-node]")) return; // node click, not a stroke
    event.preventDefault();
    this.stroke = [this.toGeometry(event)];
  }

  private onMouseMove(event: MouseEvent): void {
    if (!this.stroke) return;
    this.stroke.push(this.toGeometry(event));
    this.drawStrokePreview();
  }

  private onMouseUp(): void {
    if (!this.stroke) return;
    const points = this.stroke;
    this.stroke = null;
    this.svg.querySelector("[data-stroke-preview]")?.remove();
    const span = points.reduce(
      (acc, [x, y]) =>
        Math.max(acc, Math.hypot(x - points[0][0], y - points[0][1])),
      0,
    );
    if (points.length >= 2 && span >= MIN_STROKE_SPAN) {
      this.callbacks.onStroke(points);
    }
  }

  private drawStrokePreview(): void {
    if (!this.stroke) return;
    let path = this.svg.querySelector("[data-stroke-preview]");
    if (!path) {
      path = document.createElementNS(SVG_NS, "polyline");
      path.setAttribute("class", "stroke-preview");
      (path as SVGElement).dataset.strokePreview = "true";
      this.svg.appendChild(path);
    }
    path.setAttribute(
      "points",
      this.stroke.map(([x, y]) => `${x},${y}`).join(" "),
    );
  }

  private redraw(): void {
    if (!this.state || !this.geometry) return;
    const positions = this.geometry.positions;
    const xs = Object.values(positions).map((p) => p[0]);
    const ys = Object.values(positions).map((p) => p[1]);
    const minX = Math.min(...xs) - PAD - 60;
    const minY = Math.min(...ys) - PAD;
    const width = Math.max(...xs) - minX + PAD * 2;
    const height = Math.max(...ys) - minY + PAD * 2;
    this.origin = [minX, minY];
    this.view = { x: minX, y: minY, width, height };
    this.svg.setAttribute("viewBox", `${minX} ${minY} ${width} ${height}`);
    this.svg.replaceChildren();

    for (const edge of this.geometry.edges) {
      const line = document.createElementNS(SVG_NS, "line");
      line.setAttribute("class", "tree-edge");
      line.dataset.edge = `${edge.child}-${edge.parent}`;
      line.setAttribute("x1", String(edge.p_child[0]));
      line.setAttribute("y1", String(edge.p_child[1]));
      line.setAttribute("x2", String(edge.p_parent[0]));
      line.setAttribute("y2", String(edge.p_parent[1]));
      this.svg.appendChild(line);
    }

    for (const [key, [x, y]] of Object.entries(positions)) {
      const id = Number(key);
      if (id === this.state.virtual_root) continue;
      const node = this.nodeById(id);
      if (!node) continue;
      const group = document.createElementNS(SVG_NS, "g");
      group.dataset.treeNode = String(id);

      if ("token_index" in node) {
        const label = this.state.tokens[node.token_index];
        this.appendBox(group, x, y, label, "leaf-node");
      } else if (node.folded) {
        const label = this.subtreeTokens(id).join(" ");
        const box = this.appendBox(group, x, y, label, "folded-node");
        box.setAttribute("fill", FOLDED_FILL);
        group.addEventListener("click", () =>
          this.callbacks.onToggleFold(id),
        );
      } else {
        const circle = document.createElementNS(SVG_NS, "circle");
        circle.setAttribute("class", "internal-node");
        circle.dataset.internal = String(id);
        circle.setAttribute("cx", String(x));
        circle.setAttribute("cy", String(y));
        circle.setAttribute("r", "8");
        group.appendChild(circle);
        group.addEventListener("click", () =>
          this.callbacks.onToggleFold(id),
        );
      }
      this.svg.appendChild(group);
    }
  }

  private appendBox(
    group: SVGGElement,
    x: number,
    y: number,
    label: string,
    cssClass: string,
  ): SVGRectElement {
    const width = Math.max(34, label.length * 8 + 12);
    const rect = document.createElementNS(SVG_NS, "rect");
    rect.setAttribute("class", cssClass);
    rect.setAttribute("x", String(x - width));
    rect.setAttribute("y", String(y - 12));
    rect.setAttribute("width", String(width));
    rect.setAttribute("height", "24");
    rect.setAttribute("rx", "6");
    group.appendChild(rect);
    const text = document.createElementNS(SVG_NS, "text");
    text.setAttribute("class", "node-label");
    text.setAttribute("x", String(x - width / 2));
    text.setAttribute("y", String(y + 4));
    text.textContent = label;
    group.appendChild(text);
    return rect;
  }
}
