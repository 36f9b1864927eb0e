import type { ClusterState, LayoutView } from "./types";

const SVG_NS = "http://www.w3.org/2000/svg";
const NODE_RADIUS = 14;
const DRAG_THRESHOLD = 3;

export interface ClusterViewCallbacks {
  /** Drop: dragged node landed inside the target's effective radius. */
  onAddLink(dragged: number, target: number): void;
  onRemoveLink(a: number, b: number): void;
  /** Drag started: highlight and scroll the corresponding token. */
  onMentionFocus(id: number): void;
}

interface DragState {
  node: number;
  x: number;
  y: number;
  moved: boolean;
  target: number | null;
}

/**
 * The interaction canvas: mention nodes at server-computed positions,
 * links between them, and the drag-to-merge gesture with shadow circles
 * and a red preview link. All structural changes go through the callbacks;
 * this view never edits state locally.
 */
export class ClusterView {
  readonly svg: SVGSVGElement;
  private state: ClusterState | null = null;
  private layout: LayoutView | null = null;
  private drag: DragState | null = null;
  private highlighted: number | null = null;

  constructor(
    container: HTMLElement,
    private readonly callbacks: ClusterViewCallbacks,
  ) {
    this.svg = document.createElementNS(SVG_NS, "svg");
    this.svg.setAttribute("class", "cluster-canvas");
    container.appendChild(this.svg);
    this.svg.addEventListener("mousemove", (e) => this.onMouseMove(e));
    this.svg.addEventListener("mouseup", (e) => this.onMouseUp(e));
    this.svg.addEventListener("mouseleave", () => this.cancelDrag());
  }

  render(state: ClusterState, layout: LayoutView): void {
    this.state = state;
    this.layout = layout;
    this.redraw();
  }

  /** Token clicked in the text pane: show the node in red. */
  highlightNode(id: number | null): void {
    this.highlighted = id;
    this.redraw();
  }

  get dragging(): boolean {
    return this.drag !== null && this.drag.moved;
  }

  get dragTarget(): number | null {
    return this.drag?.target ?? null;
  }

  private positionOf(id: number): [number, number] {
    if (this.drag && this.drag.moved && this.drag.node === id) {
      return [this.drag.x, this.drag.y];
    }
    return this.layout!.positions[String(id)];
  }

  private toCanvas(event: MouseEvent): [number, number] {
    const rect = this.svg.getBoundingClientRect();
    const [width, height] = this.layout!.canvas;
    const sx = rect.width > 0 ? width / rect.width : 1;
    const sy = rect.height > 0 ? height / rect.height : 1;
    return [(event.clientX - rect.left) * sx, (event.clientY - rect.top) * sy];
  }

  /** Nearest other node within the effective radius; ties to smaller id. */
  private proximityTarget(x: number, y: number, dragged: number): number | null {
    let best: [number, number] | null = null;
    const ids = Object.keys(this.layout!.positions)
      .map(Number)
      .sort((a, b) => a - b);
    for (const id of ids) {
      if (id === dragged) continue;
      const [nx, ny] = this.layout!.positions[String(id)];
      const dist = Math.hypot(nx - x, ny - y);
      if (dist <= this.layout!.radius && (best === null || dist < best[0])) {
        best = [dist, id];
      }
    }
    return best === null ? null : best[1];
  }

  private onMouseDownNode(event: MouseEvent, id: number): void {
    event.preventDefault();
    const [x, y] = this.toCanvas(event);
    this.drag = { node: id, x, y, moved: false, target: null };
  }

  private onMouseMove(event: MouseEvent): void {
    if (!this.drag || !this.layout) return;
    const [x, y] = this.toCanvas(event);
    if (!this.drag.moved) {
      const [sx, sy] = this.layout.positions[String(this.drag.node)];
      if (Math.hypot(x - sx, y - sy) < DRAG_THRESHOLD) return;
      this.drag.moved = true;
      this.callbacks.onMentionFocus(this.drag.node);
    }
    this.drag.x = x;
    this.drag.y = y;
    this.drag.target = this.proximityTarget(x, y, this.drag.node);
    this.redraw();
  }

  private onMouseUp(event: MouseEvent): void {
    if (!this.drag) return;
    const { node, moved } = this.drag;
    const [x, y] = this.toCanvas(event);
    const target = moved ? this.proximityTarget(x, y, node) : null;
    this.drag = null;
    if (moved && target !== null) {
      this.callbacks.onAddLink(node, target);
    } else {
      this.redraw();
    }
  }

  private cancelDrag(): void {
    if (this.drag) {
      this.drag = null;
      this.redraw();
    }
  }

  private redraw(): void {
    if (!this.state || !this.layout) return;
    const [width, height] = this.layout.canvas;
    this.svg.setAttribute("viewBox", `0 0 ${width} ${height}`);
    this.svg.replaceChildren();
    const dragging = this.drag !== null && this.drag.moved;
    const colors = new Map(this.state.mentions.map((m) => [m.id, m.color]));

    for (const [a, b] of this.state.links) {
      const [x1, y1] = this.positionOf(a);
      const [x2, y2] = this.positionOf(b);
      const line = document.createElementNS(SVG_NS, "line");
      line.setAttribute("class", "link");
      line.dataset.link = `${a}-${b}`;
      line.setAttribute("x1", String(x1));
      line.setAttribute("y1", String(y1));
      line.setAttribute("x2", String(x2));
      line.setAttribute("y2", String(y2));
      line.addEventListener("mouseenter", () => line.classList.add("doomed"));
      line.addEventListener("mouseleave", () =>
        line.classList.remove("doomed"),
      );
      line.addEventListener("click", () => this.callbacks.onRemoveLink(a, b));
      this.svg.appendChild(line);
    }

    if (dragging && this.drag!.target !== null) {
      const [tx, ty] = this.layout.positions[String(this.drag!.target)];
      const preview = document.createElementNS(SVG_NS, "line");
      preview.setAttribute("class", "preview-link");
      preview.dataset.preview = "true";
      preview.setAttribute("x1", String(this.drag!.x));
      preview.setAttribute("y1", String(this.drag!.y));
      preview.setAttribute("x2", String(tx));
      preview.setAttribute("y2", String(ty));
      this.svg.appendChild(preview);
    }

    for (const mention of this.state.mentions) {
      const [x, y] = this.positionOf(mention.id);
      const group = document.createElementNS(SVG_NS, "g");
      group.setAttribute("class", "node");
      group.dataset.nodeId = String(mention.id);

      if (dragging && mention.id !== this.drag!.node) {
        // the effective area for adding a link
        const shadow = document.createElementNS(SVG_NS, "circle");
        shadow.setAttribute("class", "shadow-circle");
        shadow.dataset.shadow = String(mention.id);
        shadow.setAttribute("cx", String(x));
        shadow.setAttribute("cy", String(y));
        shadow.setAttribute("r", String(this.layout.radius));
        group.appendChild(shadow);
      }

      const circle = document.createElementNS(SVG_NS, "circle");
      circle.setAttribute("class", "node-circle");
      circle.dataset.node = String(mention.id);
      circle.setAttribute("cx", String(x));
      circle.setAttribute("cy", String(y));
      circle.setAttribute("r", String(NODE_RADIUS));
      circle.setAttribute("fill", colors.get(mention.id) ?? "#999999");
      if (this.highlighted === mention.id) {
        circle.classList.add("focused");
      }
      circle.addEventListener("mousedown", (e) =>
        this.onMouseDownNode(e, mention.id),
      );
      group.appendChild(circle);

      const index = document.createElementNS(SVG_NS, "text");
      index.setAttribute("class", "node-index");
      index.setAttribute("x", String(x));
      index.setAttribute("y", String(y + 4));
      index.textContent = String(mention.id);
      group.appendChild(index);

      if (dragging) {
        const abbr = document.createElementNS(SVG_NS, "text");
        abbr.setAttribute("class", "node-abbr");
        abbr.dataset.abbr = String(mention.id);
        abbr.setAttribute("x", String(x));
        abbr.setAttribute("y", String(y + NODE_RADIUS + 14));
        abbr.textContent = mention.abbreviation;
        group.appendChild(abbr);
      }

      this.svg.appendChild(group);
    }
  }
}
