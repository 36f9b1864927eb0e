import { ApiClient, ServiceError } from "./api";
import { ClusterView } from "./clusterView";
import { TextPane } from "./textPane";
import { TreeView } from "./treeView";
import type {
  ClusterState,
  EditOpBody,
  LayoutView,
  Snapshot,
  TaskDescriptorView,
  TreeGeometry,
  TreeState,
} from "./types";

export interface ViewState {
  task: TaskDescriptorView | null;
  sessionId: string | null;
  snapshot: Snapshot | null;
  layout: LayoutView | null;
  geometry: TreeGeometry | null;
  message: string | null;
  lastDownload: { content: string; mime: string } | null;
}

/**
 * Single-session worker app. The server snapshot is the only source of
 * annotation truth: every gesture turns into an op (or stroke) request and
 * the view re-renders from the acknowledged snapshot, so the UI can never
 * drift from the engine.
 */
export class App {
  readonly state: ViewState = {
    task: null,
    sessionId: null,
    snapshot: null,
    layout: null,
    geometry: null,
    message: null,
    lastDownload: null,
  };

  readonly clusterView: ClusterView;
  readonly treeView: TreeView;
  readonly textPane: TextPane;
  private readonly taskList: HTMLElement;
  private readonly sentenceList: HTMLElement;
  private readonly messageHost: HTMLElement;
  private readonly undoButton: HTMLButtonElement;
  private readonly redoButton: HTMLButtonElement;

  constructor(
    root: HTMLElement,
    readonly api: ApiClient,
  ) {
    root.innerHTML = `
      <div class="layout">
        <aside class="side-pane">
          <div data-role="tasks"></div>
          <div data-role="text-pane"></div>
          <div data-role="sentences"></div>
        </aside>
        <main class="work-pane">
          <nav class="toolbar">
            <button data-role="undo" disabled>undo</button>
            <button data-role="redo" disabled>redo</button>
            <button data-role="download">download</button>
            <span data-role="message"></span>
          </nav>
          <div data-role="canvas"></div>
        </main>
      </div>`;
    this.taskList = root.querySelector("[data-role=tasks]")!;
    this.sentenceList = root.querySelector("[data-role=sentences]")!;
    this.messageHost = root.querySelector("[data-role=message]")!;
    this.undoButton = root.querySelector("[data-role=undo]")!;
    this.redoButton = root.querySelector("[data-role=redo]")!;
    const canvas = root.querySelector<HTMLElement>("[data-role=canvas]")!;
    const textHost = root.querySelector<HTMLElement>("[data-role=text-pane]")!;

    this.textPane = new TextPane(textHost, {
      onTokenClick: (id) => this.clusterView.highlightNode(id),
    });
    this.clusterView = new ClusterView(canvas, {
      onAddLink: (dragged, target) =>
        void this.applyOp({ kind: "add_link", a: dragged, b: target }),
      onRemoveLink: (a, b) =>
        void this.applyOp({ kind: "remove_link", a, b }),
      onMentionFocus: (id) => this.textPane.focusToken(id),
    });
    this.treeView = new TreeView(canvas, {
      onToggleFold: (node) =>
        void this.applyOp({ kind: "toggle_fold", node }),
      onStroke: (points) => void this.sendStroke(points),
    });

    this.undoButton.addEventListener("click", () => void this.undo());
    this.redoButton.addEventListener("click", () => void this.redo());
    root
      .querySelector("[data-role=download]")!
      .addEventListener("click", () => void this.download());
  }

  async start(): Promise<void> {
    const { tasks } = await this.api.listTasks();
    this.taskList.replaceChildren();
    for (const task of tasks) {
      const button = document.createElement("button");
      button.className = "task-entry";
      button.dataset.taskId = task.task_id;
      button.textContent = `${task.kind}: ${task.task_id}`;
      button.addEventListener("click", () => void this.openTask(task.task_id));
      this.taskList.appendChild(button);
    }
  }

  async openTask(taskId: string, sentenceIndex = 0): Promise<void> {
    const task = await this.api.getTask(taskId);
    this.state.task = task;
    const opened = await this.api.openSession(taskId, {
      sentence_index: sentenceIndex,
    });
    this.state.sessionId = opened.session_id;
    if (task.kind === "clustering") {
      this.textPane.renderTask(task);
      this.sentenceList.replaceChildren();
    } else {
      this.renderSentenceList(task, sentenceIndex);
    }
    await this.acceptSnapshot(opened.snapshot);
  }

  private renderSentenceList(
    task: TaskDescriptorView,
    active: number,
  ): void {
    this.sentenceList.replaceChildren();
    (task.payload.sentences ?? []).forEach((sentence, index) => {
      const row = document.createElement("div");
      row.className = "sentence-row" + (index === active ? " active" : "");
      row.dataset.sentenceIndex = String(index);
      const label = document.createElement("span");
      label.textContent = sentence.join(" ");
      label.addEventListener("click", () =>
        void this.openTask(task.task_id, index),
      );
      const download = document.createElement("button");
      download.className = "download-icon";
      download.textContent = "⤓";
      download.title = "download the current tree";
      download.addEventListener("click", () => void this.download());
      row.append(label, download);
      this.sentenceList.appendChild(row);
    });
  }

  /** Install an acknowledged snapshot and refresh layout-dependent views. */
  private async acceptSnapshot(snapshot: Snapshot): Promise<void> {
    this.state.snapshot = snapshot;
    this.undoButton.disabled = !snapshot.can_undo;
    this.redoButton.disabled = !snapshot.can_redo;
    if (snapshot.kind === "clustering") {
      this.state.layout = await this.api.layout(snapshot.session_id);
      const clusterState = snapshot.state as ClusterState;
      this.clusterView.render(clusterState, this.state.layout);
      this.textPane.updateColors(clusterState);
    } else {
      this.state.geometry = await this.api.treeLayout(snapshot.session_id);
      this.treeView.render(snapshot.state as TreeState, this.state.geometry);
    }
  }

  async applyOp(op: EditOpBody): Promise<void> {
    if (!this.state.sessionId) return;
    try {
      const response = await this.api.applyOp(this.state.sessionId, {
        timestamp: Date.now() / 1000,
        ...op,
      });
      this.showMessage(null);
      await this.acceptSnapshot(response.snapshot);
    } catch (error) {
      this.surface(error);
    }
  }

  async sendStroke(points: [number, number][]): Promise<void> {
    if (!this.state.sessionId) return;
    try {
      const response = await this.api.sendStroke(
        this.state.sessionId,
        points,
        Date.now() / 1000,
      );
      if (response.intent.kind === "noop" && response.intent.reason) {
        this.showMessage(response.intent.reason);
      } else {
        this.showMessage(null);
      }
      await this.acceptSnapshot(response.snapshot);
    } catch (error) {
      this.surface(error);
    }
  }

  async undo(): Promise<void> {
    if (!this.state.sessionId) return;
    try {
      const { snapshot } = await this.api.undo(this.state.sessionId);
      await this.acceptSnapshot(snapshot);
    } catch (error) {
      this.surface(error);
    }
  }

  async redo(): Promise<void> {
    if (!this.state.sessionId) return;
    try {
      const { snapshot } = await this.api.redo(this.state.sessionId);
      await this.acceptSnapshot(snapshot);
    } catch (error) {
      this.surface(error);
    }
  }

  async download(): Promise<void> {
    if (!this.state.sessionId) return;
    const result = await this.api.downloadResult(this.state.sessionId);
    this.state.lastDownload = result;
    if (typeof URL.createObjectURL === "function") {
      const anchor = document.createElement("a");
      anchor.href = URL.createObjectURL(
        new Blob([result.content], { type: result.mime }),
      );
      anchor.download =
        this.state.snapshot?.kind === "parsing" ? "tree.txt" : "clusters.json";
      anchor.click();
    }
  }

  private showMessage(text: string | null): void {
    this.state.message = text;
    this.messageHost.textContent = text ?? "";
  }

  private surface(error: unknown): void {
    if (error instanceof ServiceError) {
      this.showMessage(`${error.code}: ${error.message}`);
    } else {
      this.showMessage(String(error));
    }
  }
}
